#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Conjuntos Sinteticos
=============================================================================

Descripcion:
    Genera los conjuntos artificiales A1, A2 y A3, cuyas caracteristicas
    se agrupan en racimos conocidos, junto con la matriz de similitud
    binaria que describe esos racimos.

Procedimiento:
    1. X se muestrea uniforme en [0, 1) por elemento.
    2. Se eligen las caracteristicas agrupables: todas (A1), la mitad (A2)
       o la cuarta parte (A3), al azar.
    3. Se crean d/2, d/4 o d/8 racimos; cada uno recibe una caracteristica
       semilla distinta y el resto de agrupables se reparte uniformemente.
    4. Las caracteristicas no agrupables forman racimos de un solo
       elemento, de modo que hay K = d/2, 3d/4 o 7d/8 racimos en total.
    5. El valor latente de un racimo es la suma de sus caracteristicas,
       centrada restando su esperanza (tamano / 2). Sin centrar, la
       media comun de los latentes desplaza una clase fija por encima de
       las demas y esa clase se queda con casi todas las instancias.
    6. Los latentes se proyectan a q dimensiones con una matriz normal
       estandar y la clase es el indice del maximo (empate: la menor).
       La sigmoide no se evalua: es monotona y no cambia el maximo, y en
       coma flotante satura a 1.0 con proyecciones grandes (d = 3000),
       lo que crearia empates que no existen en la proyeccion lineal.
    7. S_ij = 1 si i != j comparten racimo; la diagonal es cero.

Ficheros de volcado (guardar_conjunto):
    - X.csv: matriz densa sin cabecera
    - etiquetas.txt: una clase por linea, desde 1
    - similitud.csv: pares "i,j,s_ij" (indices desde 0)
    - grupos.csv: "caracteristica,grupo" (indices desde 0)

Uso:
    >>> conjunto = generar(EspecificacionSintetica("A1", d=300, n=1000, q=5, semilla=7))
    >>> estadisticas_dispersion(conjunto.similitud)

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import logging
import os
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.sparse as sp

from configuracion.config import (
    DIMENSION_SINTETICA, INSTANCIAS_SINTETICAS, CLASES_SINTETICAS, DIVISOR_ESQUEMA
)
from similitud.similitud import EstructuraSimilitud, cargar_similitud_csv, guardar_similitud_csv
from utilidades.errores import ErrorConfiguracion, ErrorDatos
from utilidades.helpers import escribir_atomico, escribir_texto_atomico, generador_derivado

logger = logging.getLogger(__name__)

# Fraccion de caracteristicas que se agrupa en cada esquema
FRACCION_AGRUPADA = {"A1": 1.0, "A2": 0.5, "A3": 0.25}


@dataclass(frozen=True)
class EspecificacionSintetica:
    """
    Parametros de un conjunto artificial.

    Attributes:
        esquema: "A1", "A2" o "A3".
        d: Numero de caracteristicas (divisible por 2, 4 u 8).
        n: Numero de instancias (n >= q).
        q: Numero de clases (q >= 2).
        semilla: Semilla del generador.
    """
    esquema: str = "A1"
    d: int = DIMENSION_SINTETICA
    n: int = INSTANCIAS_SINTETICAS
    q: int = CLASES_SINTETICAS
    semilla: int = 0

    def __post_init__(self):
        esquema = str(self.esquema).strip().upper()
        object.__setattr__(self, "esquema", esquema)
        if esquema not in DIVISOR_ESQUEMA:
            raise ErrorConfiguracion(f"esquema desconocido '{self.esquema}' "
                                     f"(validos: {', '.join(DIVISOR_ESQUEMA)})")
        divisor = DIVISOR_ESQUEMA[esquema]
        if self.d < divisor or self.d % divisor != 0:
            raise ErrorConfiguracion(f"el esquema {esquema} exige d divisible por {divisor}, "
                                     f"recibido d={self.d}")
        if self.q < 2:
            raise ErrorConfiguracion(f"se necesitan al menos dos clases, recibido q={self.q}")
        if self.n < self.q:
            raise ErrorConfiguracion(f"n={self.n} debe ser al menos q={self.q}")

    @property
    def numero_racimos(self) -> int:
        """Racimos con posible mas de un elemento: d/2, d/4 o d/8."""
        return self.d // DIVISOR_ESQUEMA[self.esquema]

    @property
    def numero_agrupadas(self) -> int:
        return int(self.d * FRACCION_AGRUPADA[self.esquema])


@dataclass
class ConjuntoSintetico:
    """
    Conjunto artificial generado.

    Attributes:
        X: Instancias (n, d).
        clases: Clase de cada instancia, desde 0.
        similitud: S binaria (d, d) dispersa, simetrica y con diagonal cero.
        grupos: Racimo de cada caracteristica (d,), desde 0.
    """
    X: np.ndarray
    clases: np.ndarray
    similitud: sp.csr_matrix
    grupos: np.ndarray

    @property
    def etiquetas(self) -> np.ndarray:
        """Clases desde 1, como en los ficheros."""
        return self.clases + 1

    def estructura(self) -> EstructuraSimilitud:
        return EstructuraSimilitud.desde_matriz(self.similitud)


def _asignar_grupos(especificacion: EspecificacionSintetica,
                    rng: np.random.Generator) -> np.ndarray:
    d = especificacion.d
    k = especificacion.numero_racimos
    agrupadas = np.sort(rng.permutation(d)[:especificacion.numero_agrupadas])

    grupos = np.full(d, -1, dtype=np.int64)
    # Una semilla por racimo, sin reemplazo
    orden = rng.permutation(agrupadas)
    grupos[orden[:k]] = np.arange(k)
    grupos[orden[k:]] = rng.integers(k, size=len(orden) - k)

    solitarias = np.flatnonzero(grupos < 0)
    grupos[solitarias] = k + np.arange(len(solitarias))
    return grupos


def similitud_desde_grupos(grupos: np.ndarray) -> sp.csr_matrix:
    """S binaria con S_ij = 1 si i != j pertenecen al mismo racimo."""
    grupos = np.asarray(grupos, dtype=np.int64)
    d = len(grupos)
    pertenencia = sp.csr_matrix((np.ones(d), (np.arange(d), grupos)),
                                shape=(d, int(grupos.max()) + 1 if d else 0))
    similitud = (pertenencia @ pertenencia.T).tolil()
    similitud.setdiag(0)
    similitud = similitud.tocsr()
    similitud.eliminate_zeros()
    return similitud


def generar(especificacion: EspecificacionSintetica) -> ConjuntoSintetico:
    """
    Genera un conjunto artificial reproducible a partir de su semilla.

    Args:
        especificacion: Esquema, tamanos y semilla.

    Returns:
        ConjuntoSintetico con X, clases, S y el mapa de racimos.
    """
    rng = generador_derivado(especificacion.semilla)
    X = rng.uniform(0.0, 1.0, size=(especificacion.n, especificacion.d))
    grupos = _asignar_grupos(especificacion, rng)

    k_total = int(grupos.max()) + 1
    pertenencia = sp.csr_matrix((np.ones(especificacion.d), (np.arange(especificacion.d), grupos)),
                                shape=(especificacion.d, k_total))
    # Suma de cada racimo menos su esperanza (tamano / 2)
    tamanos = np.bincount(grupos, minlength=k_total)
    latentes = np.asarray(pertenencia.T @ X.T).T - 0.5 * tamanos
    proyeccion = rng.standard_normal((k_total, especificacion.q))
    # argmax(expit(v)) = argmax(v); expit se omite para no saturar a 1.0
    clases = np.argmax(latentes @ proyeccion, axis=1).astype(np.int64)

    similitud = similitud_desde_grupos(grupos)
    logger.debug("esquema %s: %d racimos, %d elementos no nulos en S",
                 especificacion.esquema, k_total, similitud.nnz)
    return ConjuntoSintetico(X, clases, similitud, grupos)


def estadisticas_dispersion(similitud) -> Tuple[float, float]:
    """
    Fraccion de elementos no nulos fuera de la diagonal y media de
    caracteristicas similares por caracteristica.

    Example:
        >>> S = np.zeros((4, 4)); S[0, 1] = S[1, 0] = 1
        >>> estadisticas_dispersion(S)
        (0.16666666666666666, 0.5)
    """
    if sp.issparse(similitud):
        no_nulos = (sp.triu(similitud, k=1).count_nonzero()
                    + sp.tril(similitud, k=-1).count_nonzero())
        d = similitud.shape[0]
    else:
        densa = np.asarray(similitud)
        d = densa.shape[0]
        no_nulos = int(np.count_nonzero(densa)) - int(np.count_nonzero(np.diag(densa)))
    if d < 2:
        return 0.0, 0.0
    return no_nulos / (d * (d - 1)), no_nulos / d


def formatear_estadisticas(similitud) -> str:
    """Linea de resumen que imprime el subcomando synth."""
    fraccion, media = estadisticas_dispersion(similitud)
    return (f"d={similitud.shape[0]} no_nulos={100.0 * fraccion:.4f}% "
            f"similares_por_caracteristica={media:.3f}")


# =============================================================================
# VOLCADO A DISCO
# =============================================================================

def guardar_conjunto(conjunto: ConjuntoSintetico, directorio: str) -> None:
    """Escribe X.csv, etiquetas.txt, similitud.csv y grupos.csv."""
    os.makedirs(directorio, exist_ok=True)
    escribir_atomico(os.path.join(directorio, "X.csv"),
                     lambda f: np.savetxt(f, conjunto.X, delimiter=",", fmt="%.17g"))
    escribir_texto_atomico(os.path.join(directorio, "etiquetas.txt"),
                           "".join(f"{e}\n" for e in conjunto.etiquetas.tolist()))
    guardar_similitud_csv(conjunto.estructura(), os.path.join(directorio, "similitud.csv"))
    escribir_texto_atomico(os.path.join(directorio, "grupos.csv"),
                           "caracteristica,grupo\n" +
                           "".join(f"{i},{g}\n" for i, g in enumerate(conjunto.grupos.tolist())))


def cargar_conjunto(directorio: str) -> ConjuntoSintetico:
    """Lee un conjunto escrito por guardar_conjunto."""
    try:
        X = np.loadtxt(os.path.join(directorio, "X.csv"), delimiter=",", ndmin=2)
        etiquetas = np.loadtxt(os.path.join(directorio, "etiquetas.txt"), dtype=np.int64, ndmin=1)
        grupos = np.loadtxt(os.path.join(directorio, "grupos.csv"), delimiter=",",
                            skiprows=1, dtype=np.int64, ndmin=2)[:, 1]
    except ValueError as error:
        raise ErrorDatos(f"{directorio}: conjunto sintetico ilegible ({error})")
    if len(etiquetas) != X.shape[0] or len(grupos) != X.shape[1]:
        raise ErrorDatos(f"{directorio}: tamanos incoherentes entre X, etiquetas y grupos")
    if etiquetas.min() < 1:
        raise ErrorDatos(f"{directorio}: las etiquetas deben empezar en 1")
    estructura = cargar_similitud_csv(os.path.join(directorio, "similitud.csv"), X.shape[1])
    return ConjuntoSintetico(X, etiquetas - 1, sp.csr_matrix(estructura.similitud), grupos)
