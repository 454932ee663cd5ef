#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tipos de los Regularizadores
=============================================================================

Descripcion:
    Configuracion de un regularizador y cuadrupla de coeficientes de
    perturbacion del regularizador estocastico.

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from configuracion.config import (
    TipoRegularizador, MUESTRAS_POR_INSTANCIA, TAMANO_VECINDARIO, TASA_DROPOUT_MAX
)
from utilidades.errores import ErrorParametro


@dataclass(frozen=True)
class ConfigRegularizador:
    """
    Regularizador activo y sus hiperparametros.

    Attributes:
        tipo (TipoRegularizador): Regularizador activo (uno por ejecucion).
        fuerza (float): λ >= 0; no se usa con DROPOUT.
        tasa_dropout (float): Probabilidad de descarte en [0, 0.9].
        vecindario (float): c > 0, cota de los coeficientes de ST.
        muestras (int): p >= 1, pares perturbados por instancia.
    """
    tipo: TipoRegularizador = TipoRegularizador.NINGUNO
    fuerza: float = 0.0
    tasa_dropout: float = 0.5
    vecindario: float = TAMANO_VECINDARIO
    muestras: int = MUESTRAS_POR_INSTANCIA

    def __post_init__(self):
        if not isinstance(self.tipo, TipoRegularizador):
            object.__setattr__(self, "tipo", TipoRegularizador.desde_texto(str(self.tipo)))
        if not (np.isfinite(self.fuerza) and self.fuerza >= 0):
            raise ErrorParametro(f"la fuerza λ debe ser >= 0, recibida {self.fuerza}")
        if not (0.0 <= self.tasa_dropout <= TASA_DROPOUT_MAX):
            raise ErrorParametro(f"la tasa de dropout debe estar en [0, {TASA_DROPOUT_MAX}], "
                                 f"recibida {self.tasa_dropout}")
        if not self.vecindario > 0:
            raise ErrorParametro(f"el vecindario c debe ser positivo, recibido {self.vecindario}")
        if int(self.muestras) < 1:
            raise ErrorParametro(f"se necesita al menos una muestra por instancia, recibidas {self.muestras}")

    @property
    def activo(self) -> bool:
        """True si el regularizador modifica el entrenamiento."""
        if self.tipo is TipoRegularizador.DROPOUT:
            return self.tasa_dropout > 0
        return self.tipo is not TipoRegularizador.NINGUNO and self.fuerza > 0


Real = Union[float, np.ndarray]


@dataclass(frozen=True)
class CuadruplaPerturbacion:
    """
    Coeficientes (λ_i, λ_j, λ_i', λ_j') con λ_i + λ_j = λ_i' + λ_j'.

    Los campos son escalares o arrays de la misma forma.
    """
    lambda_i: Real
    lambda_j: Real
    lambda_i_prima: Real
    lambda_j_prima: Real
