#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Metricas y Significancia
=============================================================================

Descripcion:
    Error de clasificacion y prueba de McNemar entre dos clasificadores
    evaluados sobre el mismo conjunto de prueba.

McNemar:
    b = #(A acierta, B falla), c = #(A falla, B acierta).
    Estadistico con correccion de continuidad (|b - c| - 1)² / (b + c),
    comparado con el cuantil 1 - α de una χ² con 1 grado de libertad
    (3.841459 para α = 0.05). La variante exacta usa la prueba binomial
    sobre b y c y compara su valor p con α.

Uso:
    >>> error_clasificacion([0, 1, 1], [0, 1, 0])
    33.33333333333333
    >>> mcnemar(pred_a, pred_b, y).direccion
    'mejor'

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2
from statsmodels.stats.contingency_tables import mcnemar as prueba_mcnemar

from configuracion.config import ALFA_MCNEMAR
from utilidades.errores import ErrorDatos, ErrorForma

MEJOR = "mejor"
PEOR = "peor"
IGUAL = "igual"

# Marca de cada direccion en las tablas de resultados
MARCAS = {MEJOR: "+", PEOR: "-", IGUAL: "="}


@dataclass(frozen=True)
class ResultadoComparacion:
    """
    Resultado de comparar A con B.

    Attributes:
        estadistico (float): Estadistico de la prueba.
        significativo (bool): Si la diferencia es significativa.
        direccion (str): "mejor", "peor" o "igual" (A respecto a B).
        b (int): A acierta y B falla.
        c (int): A falla y B acierta.
        valor_p (float): Valor p de la prueba (1.0 si b + c = 0).
    """
    estadistico: float
    significativo: bool
    direccion: str
    b: int
    c: int
    valor_p: float = 1.0

    @property
    def marca(self) -> str:
        return MARCAS[self.direccion]


def _como_vectores(*vectores):
    arrays = [np.asarray(v).ravel() for v in vectores]
    if len({len(a) for a in arrays}) != 1:
        raise ErrorForma(f"longitudes distintas: {[len(a) for a in arrays]}")
    if len(arrays[0]) == 0:
        raise ErrorDatos("no hay predicciones que evaluar")
    return arrays


def error_clasificacion(predicciones, y) -> float:
    """
    Porcentaje de predicciones erroneas: 100 · #fallos / n.

    Raises:
        ErrorForma: Si las longitudes no coinciden.

    Example:
        >>> error_clasificacion([1, 2, 3, 1, 1, 1, 1, 1, 1, 1], [1] * 10)
        20.0
    """
    predicciones, y = _como_vectores(predicciones, y)
    return 100.0 * float(np.count_nonzero(predicciones != y)) / len(y)


def umbral_chi2(alfa: float = ALFA_MCNEMAR) -> float:
    """Cuantil 1 - α de la χ² con un grado de libertad."""
    return float(chi2.ppf(1.0 - alfa, df=1))


def mcnemar(predicciones_a, predicciones_b, y, alfa: float = ALFA_MCNEMAR,
            exacta: bool = False) -> ResultadoComparacion:
    """
    Prueba de McNemar entre los clasificadores A y B.

    Args:
        predicciones_a: Predicciones de A.
        predicciones_b: Predicciones de B sobre las mismas instancias.
        y: Etiquetas verdaderas.
        alfa: Nivel de significancia.
        exacta: Usar la prueba binomial exacta en lugar de la χ².

    Returns:
        ResultadoComparacion; direccion "mejor" si A es significativamente
        mejor (b > c).

    Example:
        >>> # b = 10, c = 0 -> estadistico 8.1 > 3.841
        >>> mcnemar([1] * 10, [0] * 10, [1] * 10).significativo
        True
    """
    predicciones_a, predicciones_b, y = _como_vectores(predicciones_a, predicciones_b, y)
    acierta_a = predicciones_a == y
    acierta_b = predicciones_b == y
    b = int(np.count_nonzero(acierta_a & ~acierta_b))
    c = int(np.count_nonzero(~acierta_a & acierta_b))

    if b + c == 0:
        return ResultadoComparacion(0.0, False, IGUAL, b, c, 1.0)

    tabla = [[int(np.count_nonzero(acierta_a & acierta_b)), b],
             [c, int(np.count_nonzero(~acierta_a & ~acierta_b))]]
    resultado = prueba_mcnemar(tabla, exact=exacta, correction=True)
    estadistico = float(resultado.statistic)
    valor_p = float(resultado.pvalue)

    if exacta:
        significativo = valor_p < alfa
    else:
        significativo = estadistico > umbral_chi2(alfa)

    if not significativo:
        direccion = IGUAL
    else:
        direccion = MEJOR if b > c else PEOR
    return ResultadoComparacion(estadistico, significativo, direccion, b, c, valor_p)
