#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Regularizador Estocastico (ST)
=============================================================================

Descripcion:
    Aumento de datos que solo aparece en el regularizador. Para cada
    instancia x se eligen p pares (i, j) similares y una cuadrupla de
    coeficientes con λ_i + λ_j = λ_i' + λ_j', y se penaliza

        S_ij ‖φ(x + λ_i e_i + λ_j e_j) - φ(x + λ_i' e_i + λ_j' e_j)‖²

    Las instancias generadas son constantes: el gradiente no atraviesa el
    muestreo.

Uso:
    >>> rng = generador_derivado(semilla, 1)
    >>> pares = generar_pares_st(X, estructura, p=5, c=1.0, rng=rng)
    >>> valor, gradientes = penalizacion_gradiente_st(params, pares)

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from red.red import Gradientes, ParametrosRed, propagar, retropropagar
from regularizadores.tipos import CuadruplaPerturbacion
from similitud.similitud import EstructuraSimilitud
from utilidades.errores import ErrorConfiguracion, ErrorParametro


@dataclass
class ParesPerturbados:
    """
    Instancias perturbadas por parejas.

    Attributes:
        mas (np.ndarray): x + λ_i e_i + λ_j e_j, forma (k, d).
        menos (np.ndarray): x + λ_i' e_i + λ_j' e_j, forma (k, d).
        pesos (np.ndarray): S_ij de cada pareja, forma (k,).
        pares_i (np.ndarray): Caracteristica i de cada pareja.
        pares_j (np.ndarray): Caracteristica j de cada pareja.
    """
    mas: np.ndarray
    menos: np.ndarray
    pesos: np.ndarray
    pares_i: np.ndarray
    pares_j: np.ndarray

    def __len__(self) -> int:
        return len(self.pesos)


def muestrear_cuadrupla(rng: np.random.Generator, c: float,
                        tamano: Optional[Union[int, Tuple[int, ...]]] = None
                        ) -> CuadruplaPerturbacion:
    """
    Muestrea (λ_i, λ_j, λ_i') ~ U(-c, c) y fija λ_j' = (λ_i + λ_j) - λ_i'.

    Evaluando en ese mismo orden, λ_i + λ_j - λ_i' - λ_j' es exactamente 0.

    Args:
        rng: Generador numpy.
        c: Tamano del vecindario, c > 0.
        tamano: None para escalares, o la forma de los arrays.

    Raises:
        ErrorParametro: Si c no es positivo.
    """
    if not c > 0:
        raise ErrorParametro(f"el vecindario c debe ser positivo, recibido {c}")
    forma = (3,) if tamano is None else (3,) + tuple(np.atleast_1d(tamano))
    lambda_i, lambda_j, lambda_i_prima = rng.uniform(-c, c, size=forma)
    lambda_j_prima = (lambda_i + lambda_j) - lambda_i_prima
    if tamano is None:
        return CuadruplaPerturbacion(float(lambda_i), float(lambda_j),
                                     float(lambda_i_prima), float(lambda_j_prima))
    return CuadruplaPerturbacion(lambda_i, lambda_j, lambda_i_prima, lambda_j_prima)


def generar_pares_st(x: np.ndarray, estructura: EstructuraSimilitud, p: int, c: float,
                     rng: np.random.Generator) -> ParesPerturbados:
    """
    Genera p parejas perturbadas por instancia.

    El par (i, j) se elige uniformemente entre los pares similares
    conservados; la similitud entra como peso S_ij de la penalizacion.
    Cada instancia generada difiere de x solo en las coordenadas i y j.

    Args:
        x: Instancia (d,) o lote (n, d), denso.
        estructura: Similitud con lista de pares.
        p: Parejas por instancia.
        c: Tamano del vecindario.
        rng: Generador numpy.

    Returns:
        ParesPerturbados con n·p parejas, agrupadas por instancia.

    Raises:
        ErrorConfiguracion: Si no hay pares similares.
    """
    if not estructura.tiene_pares:
        estructura = EstructuraSimilitud.desde_matriz(estructura.similitud)
    if estructura.numero_pares == 0:
        raise ErrorConfiguracion("el regularizador estocastico necesita al menos un par similar")

    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    n, d = x.shape
    elegidos = rng.integers(estructura.numero_pares, size=(n, p)).ravel()
    cuadrupla = muestrear_cuadrupla(rng, c, tamano=n * p)

    i = estructura.pares_i[elegidos]
    j = estructura.pares_j[elegidos]
    filas = np.arange(n * p)
    base = np.repeat(x, p, axis=0)

    mas = base.copy()
    mas[filas, i] += cuadrupla.lambda_i
    mas[filas, j] += cuadrupla.lambda_j
    menos = base
    menos[filas, i] += cuadrupla.lambda_i_prima
    menos[filas, j] += cuadrupla.lambda_j_prima
    return ParesPerturbados(mas, menos, estructura.pesos[elegidos], i, j)


def penalizacion_gradiente_st(params: ParametrosRed,
                              pares: ParesPerturbados) -> Tuple[float, Gradientes]:
    """
    Penalizacion Σ S_ij ‖φ(x+) - φ(x-)‖² y su gradiente.

    El gradiente suma dos retropropagaciones estandar con semillas
    ±2 S_ij (φ(x+) - φ(x-)).
    """
    traza_mas = propagar(params, pares.mas)
    traza_menos = propagar(params, pares.menos)
    diferencia = traza_mas.salida - traza_menos.salida
    ponderada = pares.pesos[:, None] * diferencia

    penalizacion = float(np.sum(ponderada * diferencia))
    gradientes = (retropropagar(params, traza_mas, 2.0 * ponderada)
                  + retropropagar(params, traza_menos, -2.0 * ponderada))
    return penalizacion, gradientes
