#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Similitud entre Caracteristicas
=============================================================================

Descripcion:
    Construye la matriz de similitud S entre caracteristicas a partir de
    su informacion lateral (un vector z_i por caracteristica), calibra el
    ancho de banda del nucleo de calor, conserva solo los pares mas
    similares y calcula el Laplaciano L = D - S.

Convencion:
    uᵀ L u = ½ Σ_ij S_ij (u_i - u_j)², suma sobre pares ordenados, es decir
    una vez por cada par no ordenado i < j.

Formatos de fichero:
    - Informacion lateral: una caracteristica por linea, c reales
      separados por espacios; primera linea opcional "# d c".
    - Volcado de similitud: CSV "i,j,s_ij" del triangulo superior con
      indices desde 0.

Uso:
    >>> lateral = cargar_informacion_lateral("vectores.txt")
    >>> calibracion = calibrar_ancho_banda(lateral)
    >>> completa = nucleo_calor(lateral, calibracion.sigma)
    >>> estructura = dispersar_superiores(completa.similitud, 0.2)
    >>> L = estructura.laplaciano()

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

# =============================================================================
# IMPORTS
# =============================================================================

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.spatial.distance import pdist, squareform

from configuracion.config import (
    FRACCION_OBJETIVO, TOLERANCIA_FRACCION, BANDA_SIMILITUD,
    ITERACIONES_BISECCION, FRACCION_PARES, DIMENSION_MAXIMA_NUCLEO
)
from utilidades.errores import (
    ErrorConfiguracion, ErrorContrato, ErrorDatos, ErrorForma, ErrorParametro
)
from utilidades.helpers import escribir_texto_atomico

logger = logging.getLogger(__name__)

Matriz = Union[np.ndarray, sp.spmatrix]


# =============================================================================
# TIPOS DE DOMINIO
# =============================================================================

@dataclass(frozen=True)
class InformacionLateral:
    """
    Matriz Z (d x c) de informacion lateral: fila i = z_i.

    Attributes:
        valores (np.ndarray): Matriz float64 de forma (d, c).
    """
    valores: np.ndarray

    def __post_init__(self):
        valores = np.asarray(self.valores, dtype=np.float64)
        if valores.ndim != 2:
            raise ErrorForma(f"la informacion lateral debe ser 2D, recibida {valores.ndim}D")
        if valores.shape[0] < 2 or valores.shape[1] < 1:
            raise ErrorForma(f"se necesitan d >= 2 y c >= 1, recibido {valores.shape}")
        if not np.all(np.isfinite(valores)):
            raise ErrorDatos("la informacion lateral contiene valores no finitos")
        object.__setattr__(self, "valores", valores)

    @property
    def d(self) -> int:
        """Numero de caracteristicas."""
        return self.valores.shape[0]

    @property
    def c(self) -> int:
        """Dimension de cada vector lateral."""
        return self.valores.shape[1]

    def seleccionar(self, indices: np.ndarray) -> "InformacionLateral":
        """Devuelve las filas `indices`, en ese orden (reindexado conjunto)."""
        return InformacionLateral(self.valores[np.asarray(indices)])


@dataclass
class EstructuraSimilitud:
    """
    Similitud entre caracteristicas y, opcionalmente, la lista de pares.

    Attributes:
        similitud: Matriz S (d x d), densa o dispersa, simetrica.
        pares_i: Primer indice de cada par conservado (i < j), o None.
        pares_j: Segundo indice de cada par conservado.
        pesos: S_ij de cada par conservado.
    """
    similitud: Matriz
    pares_i: Optional[np.ndarray] = None
    pares_j: Optional[np.ndarray] = None
    pesos: Optional[np.ndarray] = None
    _incidencia: Optional[sp.csr_matrix] = field(default=None, repr=False, compare=False)

    @property
    def d(self) -> int:
        return self.similitud.shape[0]

    @property
    def tiene_pares(self) -> bool:
        return self.pares_i is not None

    @property
    def numero_pares(self) -> int:
        return 0 if self.pares_i is None else len(self.pares_i)

    @classmethod
    def desde_pares(cls, d: int, pares_i: np.ndarray, pares_j: np.ndarray,
                    pesos: np.ndarray, diagonal: Optional[np.ndarray] = None
                    ) -> "EstructuraSimilitud":
        """
        Construye la estructura a partir de una lista de pares i < j.

        La matriz resultante es dispersa (CSR) y simetrica; la diagonal es
        cero salvo que se indique otra.
        """
        pares_i = np.asarray(pares_i, dtype=np.int64)
        pares_j = np.asarray(pares_j, dtype=np.int64)
        pesos = np.asarray(pesos, dtype=np.float64)
        if not (len(pares_i) == len(pares_j) == len(pesos)):
            raise ErrorForma("pares_i, pares_j y pesos deben tener la misma longitud")
        if len(pares_i) and (np.any(pares_i >= pares_j) or pares_i.min() < 0 or pares_j.max() >= d):
            raise ErrorDatos("cada par debe cumplir 0 <= i < j < d")
        codigos = pares_i * d + pares_j
        if len(np.unique(codigos)) != len(codigos):
            raise ErrorDatos("la lista de pares contiene duplicados")

        superior = sp.coo_matrix((pesos, (pares_i, pares_j)), shape=(d, d))
        similitud = (superior + superior.T).tocsr()
        if diagonal is not None:
            similitud = (similitud + sp.diags(np.asarray(diagonal, dtype=np.float64))).tocsr()
        return cls(similitud, pares_i, pares_j, pesos)

    @classmethod
    def desde_matriz(cls, similitud: Matriz) -> "EstructuraSimilitud":
        """
        Envuelve una S existente y enumera como pares todos sus elementos
        no nulos del triangulo superior (sin diagonal).
        """
        _comprobar_simetrica(similitud)
        if sp.issparse(similitud):
            superior = sp.triu(similitud, k=1).tocoo()
            orden = np.lexsort((superior.col, superior.row))
            filas, columnas = superior.row[orden], superior.col[orden]
            valores = superior.data[orden]
            vivos = valores != 0
            return cls(similitud.tocsr(), filas[vivos].astype(np.int64),
                       columnas[vivos].astype(np.int64), valores[vivos].astype(np.float64))
        densa = np.asarray(similitud, dtype=np.float64)
        filas, columnas = np.nonzero(np.triu(densa, k=1))
        return cls(densa, filas.astype(np.int64), columnas.astype(np.int64),
                   densa[filas, columnas])

    def matriz_incidencia(self) -> sp.csr_matrix:
        """
        Matriz de incidencia E (pares x d): +1 en la columna i y -1 en la j.

        Con ella las diferencias de columnas de un Jacobiano J (m x d) son
        J Eᵀ, y J L = (J Eᵀ ⊙ s) E para la S restringida a los pares.
        """
        if not self.tiene_pares:
            raise ErrorContrato("la estructura no tiene lista de pares")
        if self._incidencia is None:
            numero = self.numero_pares
            filas = np.repeat(np.arange(numero), 2)
            columnas = np.column_stack((self.pares_i, self.pares_j)).ravel()
            valores = np.tile([1.0, -1.0], numero)
            self._incidencia = sp.csr_matrix((valores, (filas, columnas)),
                                             shape=(numero, self.d))
        return self._incidencia

    def laplaciano(self) -> Matriz:
        """Laplaciano L = D - S de la matriz de similitud."""
        return laplaciano(self.similitud)


@dataclass(frozen=True)
class ResultadoCalibracion:
    """
    Resultado de calibrar el ancho de banda.

    Attributes:
        sigma (float): Ancho de banda elegido.
        fraccion (float): Fraccion de pares dentro de la banda con ese sigma.
        advertencia (bool): True si el objetivo no se alcanzo dentro de la
                            tolerancia o las distancias son degeneradas.
    """
    sigma: float
    fraccion: float
    advertencia: bool


# =============================================================================
# NUCLEO DE CALOR
# =============================================================================

def _como_matriz_lateral(lateral: Union[InformacionLateral, np.ndarray]) -> np.ndarray:
    if isinstance(lateral, InformacionLateral):
        return lateral.valores
    return InformacionLateral(lateral).valores


def _comprobar_dimension_densa(d: int, dimension_maxima: int) -> None:
    if d > dimension_maxima:
        raise ErrorConfiguracion(
            f"el nucleo de calor es denso y d={d} supera [similitud] dimension_maxima="
            f"{dimension_maxima}; use una similitud precalculada ([similitud] archivo) "
            f"o suba el limite si hay memoria para d x d reales")


def nucleo_calor(lateral: Union[InformacionLateral, np.ndarray], sigma: float,
                 dimension_maxima: int = DIMENSION_MAXIMA_NUCLEO) -> EstructuraSimilitud:
    """
    Similitud densa por nucleo de calor.

    S_ij = exp(-‖z_i - z_j‖² / (2σ²)), con diagonal exactamente 1.

    Args:
        lateral: Informacion lateral Z (d x c).
        sigma: Ancho de banda, estrictamente positivo.
        dimension_maxima: Mayor d admitido; S ocupa d x d reales.

    Returns:
        EstructuraSimilitud con S densa y sin lista de pares.

    Raises:
        ErrorParametro: Si sigma no es positivo y finito.
        ErrorDatos: Si Z contiene valores no finitos.
        ErrorConfiguracion: Si d supera dimension_maxima.

    Example:
        >>> nucleo_calor(np.array([[0.0, 0.0], [1.0, 0.0]]), 1.0).similitud[0, 1]
        0.6065306597126334
    """
    if not (np.isfinite(sigma) and sigma > 0):
        raise ErrorParametro(f"sigma debe ser positivo, recibido {sigma}")
    valores = _como_matriz_lateral(lateral)
    _comprobar_dimension_densa(valores.shape[0], dimension_maxima)

    distancias2 = squareform(pdist(valores, metric="sqeuclidean"))
    similitud = np.exp(-distancias2 / (2.0 * sigma * sigma))
    np.fill_diagonal(similitud, 1.0)
    return EstructuraSimilitud(similitud)


def ancho_banda_para(distancia: float, similitud: float) -> float:
    """
    Sigma con el que dos vectores a `distancia` tienen la `similitud` dada.

    Inversion directa del nucleo: σ = distancia / sqrt(-2 ln s).

    Example:
        >>> round(ancho_banda_para(math.sqrt(2), 0.8), 4)
        2.1169
    """
    if not (0.0 < similitud < 1.0):
        raise ErrorParametro(f"la similitud debe estar en (0, 1), recibida {similitud}")
    if distancia <= 0:
        raise ErrorParametro(f"la distancia debe ser positiva, recibida {distancia}")
    return float(distancia / math.sqrt(-2.0 * math.log(similitud)))


# =============================================================================
# CALIBRACION DEL ANCHO DE BANDA
# =============================================================================

def _fraccion_en_banda(distancias2: np.ndarray, sigma: float,
                       banda: Tuple[float, float]) -> float:
    similitudes = np.exp(-distancias2 / (2.0 * sigma * sigma))
    dentro = (similitudes >= banda[0]) & (similitudes <= banda[1])
    return float(np.count_nonzero(dentro)) / len(distancias2)


def calibrar_ancho_banda(lateral: Union[InformacionLateral, np.ndarray],
                         fraccion_objetivo: float = FRACCION_OBJETIVO,
                         banda: Tuple[float, float] = BANDA_SIMILITUD,
                         tolerancia: float = TOLERANCIA_FRACCION,
                         dimension_maxima: int = DIMENSION_MAXIMA_NUCLEO) -> ResultadoCalibracion:
    """
    Busca por biseccion el sigma cuya fraccion de pares en la banda se
    acerca a `fraccion_objetivo`.

    Se consideran los elementos fuera de la diagonal del triangulo
    superior de S. Con la banda [b, 1] la fraccion crece de forma monotona
    con sigma, asi que la biseccion acota el menor sigma que alcanza el
    objetivo; de los dos extremos finales se devuelve el mas cercano.

    Args:
        lateral: Informacion lateral Z.
        fraccion_objetivo: Fraccion deseada, en (0, 1).
        banda: Intervalo cerrado de similitud (inferior, superior).
        tolerancia: Margen aceptado; fuera de el se activa la advertencia.
        dimension_maxima: Mayor d admitido; las distancias ocupan d(d-1)/2 reales.

    Returns:
        ResultadoCalibracion con sigma, fraccion alcanzada y advertencia.

    Raises:
        ErrorParametro: Si el objetivo o la banda no son validos.
        ErrorConfiguracion: Si d supera dimension_maxima.
    """
    if not (0.0 < fraccion_objetivo < 1.0):
        raise ErrorParametro(f"la fraccion objetivo debe estar en (0, 1), recibida {fraccion_objetivo}")
    inferior, superior = banda
    if not (0.0 < inferior < superior <= 1.0):
        raise ErrorParametro(f"banda de similitud invalida: {banda}")

    valores = _como_matriz_lateral(lateral)
    _comprobar_dimension_densa(valores.shape[0], dimension_maxima)
    distancias2 = pdist(valores, metric="sqeuclidean")
    positivas = distancias2[distancias2 > 0]

    # -------------------------------------------------------------------------
    # Caso degenerado: todas las filas iguales
    # -------------------------------------------------------------------------
    if len(positivas) == 0:
        logger.warning("informacion lateral degenerada: todas las distancias son 0, "
                       "cualquier sigma da fraccion 1")
        return ResultadoCalibracion(sigma=1.0, fraccion=1.0, advertencia=True)

    # -------------------------------------------------------------------------
    # Intervalo inicial: fraccion minima en `bajo`, fraccion 1 en `alto`
    # -------------------------------------------------------------------------
    # Un par entra en la banda cuando d² <= -2σ² ln(inferior)
    escala = math.sqrt(-2.0 * math.log(inferior))
    bajo = 0.5 * math.sqrt(positivas.min()) / escala
    alto = 2.0 * math.sqrt(positivas.max()) / escala
    fraccion_bajo = _fraccion_en_banda(distancias2, bajo, banda)
    fraccion_alto = _fraccion_en_banda(distancias2, alto, banda)

    if fraccion_bajo < fraccion_objetivo <= fraccion_alto:
        for _ in range(ITERACIONES_BISECCION):
            medio = 0.5 * (bajo + alto)
            if medio <= bajo or medio >= alto:
                break
            fraccion_medio = _fraccion_en_banda(distancias2, medio, banda)
            if fraccion_medio >= fraccion_objetivo:
                alto, fraccion_alto = medio, fraccion_medio
            else:
                bajo, fraccion_bajo = medio, fraccion_medio

    # El extremo mas cercano al objetivo; empate para el que lo alcanza
    if abs(fraccion_bajo - fraccion_objetivo) < abs(fraccion_alto - fraccion_objetivo):
        sigma, fraccion = bajo, fraccion_bajo
    else:
        sigma, fraccion = alto, fraccion_alto

    advertencia = abs(fraccion - fraccion_objetivo) > tolerancia
    if advertencia:
        logger.warning("no se alcanza la fraccion objetivo %.3f: la mas cercana es %.3f "
                       "(sigma=%.6g)", fraccion_objetivo, fraccion, sigma)
    else:
        logger.debug("sigma calibrado %.6g con fraccion %.4f", sigma, fraccion)
    return ResultadoCalibracion(sigma=float(sigma), fraccion=fraccion, advertencia=advertencia)


# =============================================================================
# DISPERSION Y LAPLACIANO
# =============================================================================

def _comprobar_simetrica(similitud: Matriz) -> None:
    """Lanza ErrorContrato si S no es cuadrada y simetrica."""
    if not sp.issparse(similitud):
        similitud = np.asarray(similitud, dtype=np.float64)
    if similitud.ndim != 2 or similitud.shape[0] != similitud.shape[1]:
        raise ErrorForma(f"la similitud debe ser cuadrada, recibida {similitud.shape}")
    if sp.issparse(similitud):
        diferencia = abs(similitud - similitud.T)
        asimetria = diferencia.max() if diferencia.nnz else 0.0
        escala = abs(similitud).max() if similitud.nnz else 0.0
    else:
        asimetria = np.max(np.abs(similitud - similitud.T))
        escala = np.max(np.abs(similitud))
    if asimetria > 1e-12 * max(1.0, escala):
        raise ErrorContrato(f"la matriz de similitud no es simetrica (max |S - Sᵀ| = {asimetria:.3g})")


def dispersar_superiores(similitud: Matriz, fraccion: float = FRACCION_PARES
                         ) -> EstructuraSimilitud:
    """
    Conserva los pares mas similares de S.

    Se conservan los ceil(fraccion · d(d-1)/2) mayores elementos del
    triangulo superior sin diagonal. Los empates en el umbral se resuelven
    por orden lexicografico (i, j) ascendente. Los elementos nulos nunca se
    conservan, por lo que una S binaria con menos no nulos que el cupo
    devuelve exactamente sus no nulos. La diagonal de S se mantiene.

    Args:
        similitud: S densa o dispersa, simetrica.
        fraccion: Parte de los pares que se conserva, en (0, 1].

    Returns:
        EstructuraSimilitud con S dispersa (CSR) y la lista de pares.

    Example:
        >>> S = np.array([[1, .9, .5], [.9, 1, .1], [.5, .1, 1]])
        >>> e = dispersar_superiores(S, 1 / 3)
        >>> list(zip(e.pares_i, e.pares_j))
        [(0, 1)]
    """
    if not (0.0 < fraccion <= 1.0):
        raise ErrorParametro(f"la fraccion de pares debe estar en (0, 1], recibida {fraccion}")
    if not sp.issparse(similitud):
        similitud = np.asarray(similitud, dtype=np.float64)
    _comprobar_simetrica(similitud)
    d = similitud.shape[0]
    total = d * (d - 1) // 2
    # El redondeo de coma flotante no debe anadir un par de mas
    cupo = min(total, math.ceil(fraccion * total - 1e-9))

    if sp.issparse(similitud):
        superior = sp.triu(similitud, k=1).tocoo()
        filas, columnas, valores = superior.row, superior.col, superior.data
        diagonal = similitud.diagonal()
    else:
        similitud = np.asarray(similitud, dtype=np.float64)
        filas, columnas = np.triu_indices(d, k=1)
        valores = similitud[filas, columnas]
        diagonal = np.diag(similitud).copy()

    no_nulos = valores != 0
    filas, columnas, valores = filas[no_nulos], columnas[no_nulos], valores[no_nulos]

    # Orden: valor descendente, luego (i, j) ascendente
    orden = np.lexsort((columnas, filas, -valores))[:cupo]
    # La lista de pares se guarda en orden (i, j)
    orden = orden[np.lexsort((columnas[orden], filas[orden]))]

    estructura = EstructuraSimilitud.desde_pares(
        d, filas[orden], columnas[orden], valores[orden].astype(np.float64),
        diagonal=diagonal if np.any(diagonal) else None)
    logger.debug("dispersion: %d de %d pares conservados", estructura.numero_pares, total)
    return estructura


def laplaciano(similitud: Matriz) -> Matriz:
    """
    Laplaciano de grafo L = D - S, con D_ii = Σ_j S_ij.

    Conserva el tipo de entrada: densa -> densa, dispersa -> CSR.

    Raises:
        ErrorContrato: Si S no es simetrica o tiene elementos negativos.

    Example:
        >>> laplaciano(np.array([[1.0, 0.5], [0.5, 1.0]]))
        array([[ 0.5, -0.5],
               [-0.5,  0.5]])
    """
    if not sp.issparse(similitud):
        similitud = np.asarray(similitud, dtype=np.float64)
    _comprobar_simetrica(similitud)
    if sp.issparse(similitud):
        similitud = similitud.tocsr().astype(np.float64)
        if similitud.nnz and similitud.data.min() < 0:
            raise ErrorContrato("la matriz de similitud tiene elementos negativos")
        grados = np.asarray(similitud.sum(axis=1)).ravel()
        return (sp.diags(grados) - similitud).tocsr()

    similitud = np.asarray(similitud, dtype=np.float64)
    if similitud.min() < 0:
        raise ErrorContrato("la matriz de similitud tiene elementos negativos")
    return np.diag(similitud.sum(axis=1)) - similitud


# =============================================================================
# ENTRADA / SALIDA
# =============================================================================

def cargar_informacion_lateral(ruta: str) -> InformacionLateral:
    """
    Lee un fichero de informacion lateral.

    Formato: una caracteristica por linea con c reales separados por
    espacios. La primera linea puede ser una cabecera "# d c" que se
    contrasta con el contenido. Las lineas vacias se ignoran.

    Raises:
        ErrorDatos: Linea mal formada (con su numero), numero de columnas
                    irregular o cabecera inconsistente.
    """
    cabecera: Optional[Tuple[int, int]] = None
    filas = []
    with open(ruta, "r", encoding="utf-8") as fichero:
        for numero, linea in enumerate(fichero, start=1):
            linea = linea.strip()
            if not linea:
                continue
            if linea.startswith("#"):
                if numero == 1:
                    partes = linea[1:].split()
                    try:
                        cabecera = (int(partes[0]), int(partes[1]))
                    except (IndexError, ValueError):
                        raise ErrorDatos(f"{ruta}:{numero}: cabecera invalida, se espera '# d c'")
                continue
            try:
                fila = [float(valor) for valor in linea.split()]
            except ValueError:
                raise ErrorDatos(f"{ruta}:{numero}: valor no numerico")
            if filas and len(fila) != len(filas[0]):
                raise ErrorDatos(f"{ruta}:{numero}: se esperaban {len(filas[0])} columnas, "
                                 f"hay {len(fila)}")
            filas.append(fila)

    if not filas:
        raise ErrorDatos(f"{ruta}: no contiene vectores")
    valores = np.array(filas, dtype=np.float64)
    if cabecera is not None and cabecera != valores.shape:
        raise ErrorDatos(f"{ruta}: la cabecera declara {cabecera} pero el contenido es {valores.shape}")
    return InformacionLateral(valores)


def guardar_similitud_csv(estructura: EstructuraSimilitud, ruta: str) -> None:
    """
    Vuelca el triangulo superior de S como CSV "i,j,s_ij" (indices desde 0).

    Si la estructura tiene lista de pares se vuelcan esos pares; si no,
    todos los elementos no nulos del triangulo superior.
    """
    if not estructura.tiene_pares:
        estructura = EstructuraSimilitud.desde_matriz(estructura.similitud)
    lineas = ["i,j,s_ij"]
    lineas.extend(f"{i},{j},{peso!r}" for i, j, peso in
                  zip(estructura.pares_i.tolist(), estructura.pares_j.tolist(),
                      estructura.pesos.tolist()))
    escribir_texto_atomico(ruta, "\n".join(lineas) + "\n")


def cargar_similitud_csv(ruta: str, d: int) -> EstructuraSimilitud:
    """
    Lee un volcado "i,j,s_ij" y reconstruye la estructura con sus pares.

    Args:
        ruta: Fichero CSV con cabecera.
        d: Numero de caracteristicas.
    """
    pares_i, pares_j, pesos = [], [], []
    with open(ruta, "r", encoding="utf-8") as fichero:
        for numero, linea in enumerate(fichero, start=1):
            linea = linea.strip()
            if not linea or (numero == 1 and linea.startswith("i")):
                continue
            try:
                i, j, peso = linea.split(",")
                i, j = int(i), int(j)
                peso = float(peso)
            except ValueError:
                raise ErrorDatos(f"{ruta}:{numero}: se espera 'i,j,s_ij'")
            # Se admite cualquier orden dentro del par
            if i > j:
                i, j = j, i
            pares_i.append(i)
            pares_j.append(j)
            pesos.append(peso)
    return EstructuraSimilitud.desde_pares(d, np.array(pares_i, dtype=np.int64),
                                           np.array(pares_j, dtype=np.int64),
                                           np.array(pesos, dtype=np.float64))
