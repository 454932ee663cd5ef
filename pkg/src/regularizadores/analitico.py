#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Regularizador Analitico (AN)
=============================================================================

Descripcion:
    Penalizacion Σ_x Tr[J(x) L J(x)ᵀ] sobre el Jacobiano del modelo y su
    gradiente exacto por retropropagacion modificada.

Caminos de calculo:
    - Pares (por defecto): con la lista de pares conservados y su matriz
      de incidencia E, J L = (J Eᵀ ⊙ s) E. Coste lineal en d.
    - Denso: producto directo J L con el Laplaciano. Coste cuadratico en
      d; se mantiene para contrastar el camino de pares.

Gradiente:
    Con P = J L y Q = W[0] Pᵀ (por instancia):
        ∂R/∂b[k] = 2 Σ_n T[k]
        ∂R/∂W[k] = 2 Σ_n T[k] ⊗ z[k]
                   + 2 Σ_n (delta[k] Qᵀ G[k-1]ᵀ) ⊙ h'(a[k-1])   (k >= 1)
        ∂R/∂W[0] += 2 Σ_n delta[0] P
    donde T[k] = Σ_jg B[k]_ljg Q_gj (ver red.contraer_b).

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

from typing import Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp

from red.red import (
    Gradientes, ParametrosRed, Traza, contraer_b, propagar, tensores_sensibilidad
)
from similitud.similitud import EstructuraSimilitud, Matriz
from utilidades.errores import ErrorForma

FuenteLaplaciano = Union[EstructuraSimilitud, Matriz]


def _producto_laplaciano(J: np.ndarray, fuente: FuenteLaplaciano) -> Tuple[float, np.ndarray]:
    """
    Devuelve (Σ_n Tr[J L Jᵀ], J L) para J de forma (n, m, d).

    Una EstructuraSimilitud con pares usa el camino de pares; sin pares,
    su Laplaciano. Cualquier otra matriz se toma como el Laplaciano.
    """
    n, m, d = J.shape
    filas = J.reshape(n * m, d)

    if isinstance(fuente, EstructuraSimilitud) and fuente.tiene_pares:
        if fuente.d != d:
            raise ErrorForma(f"la similitud tiene {fuente.d} caracteristicas y el Jacobiano {d}")
        E = fuente.matriz_incidencia()
        # Diferencias de columnas: (pares, n·m)
        diferencias = np.asarray(E @ filas.T)
        ponderadas = diferencias * fuente.pesos[:, None]
        penalizacion = float(np.sum(ponderadas * diferencias))
        producto = np.asarray(E.T @ ponderadas).T
        return penalizacion, producto.reshape(n, m, d)

    L = fuente.laplaciano() if isinstance(fuente, EstructuraSimilitud) else fuente
    if L.shape != (d, d):
        raise ErrorForma(f"el Laplaciano {L.shape} no encaja con d = {d}")
    if sp.issparse(L):
        # L simetrica: J L = (L Jᵀ)ᵀ
        producto = np.asarray(L @ filas.T).T
    else:
        producto = filas @ L
    penalizacion = float(np.sum(producto * filas))
    return penalizacion, producto.reshape(n, m, d)


def penalizacion_an(params: ParametrosRed, X: np.ndarray, fuente: FuenteLaplaciano,
                    traza: Optional[Traza] = None) -> float:
    """
    Penalizacion analitica Σ_x Tr[J(x) L J(x)ᵀ] sobre el lote.

    Args:
        params: Parametros de la red.
        X: Lote (n, d).
        fuente: EstructuraSimilitud o Laplaciano (denso o disperso).
        traza: Traza ya calculada para X, si se tiene.

    Example:
        >>> # L = 0: sin efecto
        >>> params = inicializar_glorot([3, 2, 2], 0)
        >>> penalizacion_an(params, np.ones((1, 3)), np.zeros((3, 3)))
        0.0
    """
    if traza is None:
        traza = propagar(params, X)
    tensores = tensores_sensibilidad(params, traza, calcular_b=False)
    J = np.einsum("nhm,hd->nmd", tensores.delta[0], params.pesos[0])
    penalizacion, _ = _producto_laplaciano(J, fuente)
    return penalizacion


def penalizacion_gradiente_an(params: ParametrosRed, X: np.ndarray, fuente: FuenteLaplaciano,
                              traza: Optional[Traza] = None) -> Tuple[float, Gradientes]:
    """
    Penalizacion analitica y su gradiente respecto a todos los W[k] y b[k].

    Args:
        params: Parametros de la red.
        X: Lote (n, d).
        fuente: EstructuraSimilitud (camino de pares) o Laplaciano (denso).
        traza: Traza sin mascaras ya calculada para X, si se tiene.

    Returns:
        Tupla (penalizacion, gradientes).
    """
    if traza is None:
        traza = propagar(params, X)
    tensores = tensores_sensibilidad(params, traza, calcular_b=False)
    delta, G, primeras = tensores.delta, tensores.G, tensores.primeras
    W0 = params.pesos[0]

    J = np.einsum("nhm,hd->nmd", delta[0], W0)
    penalizacion, P = _producto_laplaciano(J, fuente)
    Q = np.einsum("hd,nmd->nhm", W0, P)
    T = contraer_b(params, tensores, Q)

    pesos, sesgos = [], []
    for k in range(params.numero_capas):
        entrada = traza.activaciones[k]
        gradiente_w = 2.0 * (T[k].T @ entrada)
        if k > 0:
            # Dependencia directa de delta[0] respecto a W[k]
            dq = np.matmul(delta[k], Q.transpose(0, 2, 1))                 # (n, l, g)
            directa = np.matmul(dq, G[k - 1].transpose(0, 2, 1))           # (n, l, i)
            gradiente_w += 2.0 * np.sum(directa * primeras[k - 1][:, None, :], axis=0)
        else:
            gradiente_w += 2.0 * np.einsum("nhm,nmd->hd", delta[0], P)
        pesos.append(gradiente_w)
        sesgos.append(2.0 * T[k].sum(axis=0))
    return penalizacion, Gradientes(pesos, sesgos)


def gradiente_an(params: ParametrosRed, X: np.ndarray, fuente: FuenteLaplaciano,
                 traza: Optional[Traza] = None) -> Gradientes:
    """Solo el gradiente de penalizacion_an()."""
    return penalizacion_gradiente_an(params, X, fuente, traza)[1]
