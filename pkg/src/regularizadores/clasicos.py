#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Regularizadores de Referencia
=============================================================================

Descripcion:
    Decaimiento de pesos ℓ2 y dropout invertido, los dos regularizadores
    con los que se comparan AN y ST.

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

from typing import Tuple

import numpy as np

from configuracion.config import TASA_DROPOUT_MAX
from red.red import Gradientes, ParametrosRed, Traza, propagar
from utilidades.errores import ErrorParametro


def penalizacion_gradiente_l2(params: ParametrosRed) -> Tuple[float, Gradientes]:
    """
    Σ_k ‖W[k]‖_F² (sin sesgos) y su gradiente 2 W[k].

    Example:
        >>> params = ParametrosRed([np.array([[3.0, 4.0]])], [np.zeros(1)])
        >>> penalizacion_gradiente_l2(params)[0]
        25.0
    """
    penalizacion = float(sum(np.sum(w * w) for w in params.pesos))
    gradientes = Gradientes([2.0 * w for w in params.pesos],
                            [np.zeros_like(b) for b in params.sesgos])
    return penalizacion, gradientes


def propagar_con_dropout(params: ParametrosRed, x: np.ndarray, tasa: float,
                         rng: np.random.Generator) -> Traza:
    """
    Pasada hacia delante con dropout invertido en las capas ocultas.

    Cada unidad oculta se conserva con probabilidad 1 - tasa y las que
    sobreviven se escalan por 1 / (1 - tasa). Las mascaras quedan en la
    traza para que retropropagar() las respete. La capa de salida nunca se
    enmascara, y en inferencia se usa propagar() sin mascaras.

    Args:
        params: Parametros de la red.
        x: Lote (n, d).
        tasa: Probabilidad de descarte en [0, 0.9].
        rng: Generador de las mascaras.

    Raises:
        ErrorParametro: Si la tasa esta fuera de rango.
    """
    if not (0.0 <= tasa <= TASA_DROPOUT_MAX):
        raise ErrorParametro(f"la tasa de dropout debe estar en [0, {TASA_DROPOUT_MAX}], recibida {tasa}")
    if tasa == 0.0:
        return propagar(params, x)

    n = np.atleast_2d(x).shape[0]
    conservar = 1.0 - tasa
    mascaras = [rng.binomial(1, conservar, size=(n, w.shape[0])) / conservar
                for w in params.pesos[:-1]]
    return propagar(params, x, mascaras)
