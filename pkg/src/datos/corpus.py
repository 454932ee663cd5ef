#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Corpus
=============================================================================

Descripcion:
    Carga de corpus de bolsa de palabras, preprocesado (palabras de parada
    y umbral de frecuencia) y particiones para validacion cruzada.

Formato BoW:
    Una instancia por linea: "etiqueta idx:cuenta idx:cuenta ...", con
    etiquetas e indices desde 1 y cuentas enteras positivas. Las lineas
    vacias y las que empiezan por '#' se ignoran.

        2 1:3 5:1      -> x_1 = 3, x_5 = 1, etiqueta 2

Ficheros auxiliares:
    - Vocabulario: una palabra por linea, en el orden de los indices
    - Palabras de parada: una palabra por linea
    - Nombres de clase: "id<TAB>nombre"

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
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np
import scipy.sparse as sp

from similitud.similitud import InformacionLateral
from utilidades.errores import ErrorConfiguracion, ErrorDatos, ErrorForma
from utilidades.helpers import escribir_texto_atomico, generador_derivado

logger = logging.getLogger(__name__)


# =============================================================================
# TIPOS DE DOMINIO
# =============================================================================

@dataclass
class ConjuntoDatos:
    """
    Corpus de documentos como matriz dispersa de cuentas.

    Attributes:
        X (sp.csr_matrix): Cuentas (n, d), no negativas.
        etiquetas (np.ndarray): Etiqueta de cada documento, desde 1.
        vocabulario (Optional[List[str]]): Palabra de cada columna.
        nombre (str): Nombre del corpus.
        nombres_clase (Dict[int, str]): Nombre de cada etiqueta, si se conoce.
    """
    X: sp.csr_matrix
    etiquetas: np.ndarray
    vocabulario: Optional[List[str]] = None
    nombre: str = ""
    nombres_clase: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        self.X = sp.csr_matrix(self.X, dtype=np.float64)
        self.etiquetas = np.asarray(self.etiquetas, dtype=np.int64)
        if self.X.shape[0] != len(self.etiquetas):
            raise ErrorForma(f"{self.X.shape[0]} documentos y {len(self.etiquetas)} etiquetas")
        if self.vocabulario is not None and len(self.vocabulario) != self.X.shape[1]:
            raise ErrorForma(f"vocabulario de {len(self.vocabulario)} palabras para "
                             f"{self.X.shape[1]} columnas")
        if len(self.etiquetas) and self.etiquetas.min() < 1:
            raise ErrorDatos("las etiquetas deben empezar en 1")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def clases(self) -> np.ndarray:
        """Etiquetas desde 0, como las usa la red."""
        return self.etiquetas - 1

    @property
    def numero_clases(self) -> int:
        return int(self.etiquetas.max()) if len(self.etiquetas) else 0

    def subconjunto(self, indices: np.ndarray) -> "ConjuntoDatos":
        """Documentos `indices`, en ese orden."""
        indices = np.asarray(indices, dtype=np.int64)
        return ConjuntoDatos(self.X[indices], self.etiquetas[indices], self.vocabulario,
                             self.nombre, dict(self.nombres_clase))


@dataclass
class ResultadoFiltrado:
    """
    Corpus tras eliminar columnas, con la informacion lateral reindexada.

    Attributes:
        conjunto: Corpus filtrado.
        lateral: Informacion lateral con las mismas columnas, o None.
        conservadas: Columnas originales que sobreviven, en orden.
        documentos_eliminados: Documentos que quedaron vacios.
    """
    conjunto: ConjuntoDatos
    lateral: Optional[InformacionLateral]
    conservadas: np.ndarray
    documentos_eliminados: int


@dataclass
class PlanPliegues:
    """
    Particion de 0..n-1 en k pliegues disjuntos.

    Attributes:
        pliegues (List[np.ndarray]): Indices (ordenados) de cada pliegue.
        semilla (int): Semilla con la que se construyo.
    """
    pliegues: List[np.ndarray]
    semilla: int = 0

    @property
    def k(self) -> int:
        return len(self.pliegues)

    @property
    def n(self) -> int:
        return int(sum(len(p) for p in self.pliegues))

    def particion(self, pliegue: int) -> Tuple[np.ndarray, np.ndarray]:
        """Devuelve (entrenamiento, prueba) usando el pliegue indicado como prueba."""
        if not 0 <= pliegue < self.k:
            raise ErrorConfiguracion(f"pliegue {pliegue} fuera de [0, {self.k})")
        prueba = self.pliegues[pliegue]
        resto = [p for i, p in enumerate(self.pliegues) if i != pliegue]
        entrenamiento = np.sort(np.concatenate(resto)) if resto else np.zeros(0, dtype=np.int64)
        return entrenamiento, prueba


# =============================================================================
# LECTURA Y ESCRITURA
# =============================================================================

def _leer_lineas(ruta: str) -> List[Tuple[int, str]]:
    with open(ruta, "r", encoding="utf-8") as fichero:
        return [(numero, linea.strip()) for numero, linea in enumerate(fichero, start=1)
                if linea.strip() and not linea.lstrip().startswith("#")]


def cargar_vocabulario(ruta: str) -> List[str]:
    """Una palabra por linea; el orden fija el indice de cada columna."""
    with open(ruta, "r", encoding="utf-8") as fichero:
        return [linea.strip() for linea in fichero if linea.strip()]


def cargar_bow(ruta: str, dimension: Optional[int] = None,
               ruta_vocabulario: Optional[str] = None,
               nombre: Optional[str] = None) -> ConjuntoDatos:
    """
    Lee un corpus en formato BoW.

    Args:
        ruta: Fichero BoW.
        dimension: Numero de columnas; por defecto el tamano del vocabulario
                   o, sin vocabulario, el mayor indice leido.
        ruta_vocabulario: Fichero de vocabulario opcional.
        nombre: Nombre del corpus (por defecto, la ruta).

    Raises:
        ErrorDatos: Linea mal formada (con su numero), indice fuera de
                    rango, documento vacio o fichero sin instancias.
    """
    vocabulario = cargar_vocabulario(ruta_vocabulario) if ruta_vocabulario else None
    if dimension is None and vocabulario is not None:
        dimension = len(vocabulario)

    filas, columnas, cuentas, etiquetas = [], [], [], []
    for numero, linea in _leer_lineas(ruta):
        partes = linea.split()
        try:
            etiqueta = int(partes[0])
        except ValueError:
            raise ErrorDatos(f"{ruta}:{numero}: etiqueta no entera '{partes[0]}'")
        if etiqueta < 1:
            raise ErrorDatos(f"{ruta}:{numero}: las etiquetas empiezan en 1")
        if len(partes) == 1:
            raise ErrorDatos(f"{ruta}:{numero}: documento sin palabras")

        vistos = set()
        fila = len(etiquetas)
        for termino in partes[1:]:
            try:
                indice_texto, cuenta_texto = termino.split(":")
                indice, cuenta = int(indice_texto), int(cuenta_texto)
            except ValueError:
                raise ErrorDatos(f"{ruta}:{numero}: termino mal formado '{termino}', "
                                 f"se espera 'idx:cuenta'")
            if indice < 1 or (dimension is not None and indice > dimension):
                raise ErrorDatos(f"{ruta}:{numero}: indice {indice} fuera de rango")
            if cuenta < 1:
                raise ErrorDatos(f"{ruta}:{numero}: cuenta no positiva {cuenta}")
            if indice in vistos:
                raise ErrorDatos(f"{ruta}:{numero}: indice {indice} repetido")
            vistos.add(indice)
            filas.append(fila)
            columnas.append(indice - 1)
            cuentas.append(cuenta)
        etiquetas.append(etiqueta)

    if not etiquetas:
        raise ErrorDatos(f"{ruta}: no contiene instancias")
    if dimension is None:
        dimension = max(columnas) + 1

    X = sp.csr_matrix((np.array(cuentas, dtype=np.float64), (filas, columnas)),
                      shape=(len(etiquetas), dimension))
    etiquetas = np.array(etiquetas, dtype=np.int64)
    faltan = np.setdiff1d(np.arange(1, etiquetas.max() + 1), etiquetas)
    if len(faltan):
        logger.warning("%s: etiquetas sin documentos: %s", ruta, faltan.tolist())
    logger.info("%s: %d documentos, %d palabras, %d clases", ruta, X.shape[0],
                X.shape[1], etiquetas.max())
    return ConjuntoDatos(X, etiquetas, vocabulario, nombre or ruta)


def guardar_bow(conjunto: ConjuntoDatos, ruta: str) -> None:
    """Escribe el corpus en formato BoW (cuentas redondeadas a entero)."""
    X = conjunto.X.tocsr()
    X.sort_indices()
    lineas = []
    for fila, etiqueta in enumerate(conjunto.etiquetas.tolist()):
        inicio, fin = X.indptr[fila], X.indptr[fila + 1]
        terminos = " ".join(f"{columna + 1}:{int(round(cuenta))}" for columna, cuenta in
                            zip(X.indices[inicio:fin].tolist(), X.data[inicio:fin].tolist())
                            if cuenta != 0)
        lineas.append(f"{etiqueta} {terminos}")
    escribir_texto_atomico(ruta, "\n".join(lineas) + "\n")


def cargar_palabras_parada(ruta: str) -> Set[str]:
    """Lista de parada en texto plano, una palabra por linea."""
    with open(ruta, "r", encoding="utf-8") as fichero:
        return {linea.strip().lower() for linea in fichero
                if linea.strip() and not linea.startswith("#")}


def cargar_nombres_clase(ruta: str) -> Dict[int, str]:
    """Lee "id<TAB>nombre" por linea."""
    nombres = {}
    for numero, linea in _leer_lineas(ruta):
        partes = linea.split("\t", 1)
        try:
            nombres[int(partes[0])] = partes[1].strip()
        except (IndexError, ValueError):
            raise ErrorDatos(f"{ruta}:{numero}: se espera 'id<TAB>nombre'")
    return nombres


# =============================================================================
# PREPROCESADO
# =============================================================================

def conservar_columnas(conjunto: ConjuntoDatos, conservadas: np.ndarray,
                       lateral: Optional[InformacionLateral] = None) -> ResultadoFiltrado:
    """Reindexa columnas, vocabulario e informacion lateral a la vez."""
    if lateral is not None and lateral.d != conjunto.d:
        raise ErrorForma(f"la informacion lateral tiene {lateral.d} filas y el corpus "
                         f"{conjunto.d} columnas")
    X = conjunto.X[:, conservadas].tocsr()
    vocabulario = ([conjunto.vocabulario[i] for i in conservadas.tolist()]
                   if conjunto.vocabulario is not None else None)

    no_vacios = np.flatnonzero(X.getnnz(axis=1) > 0)
    eliminados = X.shape[0] - len(no_vacios)
    if eliminados:
        logger.warning("%s: %d documentos quedan vacios y se eliminan", conjunto.nombre, eliminados)
        X = X[no_vacios]

    filtrado = ConjuntoDatos(X, conjunto.etiquetas[no_vacios], vocabulario,
                             conjunto.nombre, dict(conjunto.nombres_clase))
    nuevo_lateral = lateral.seleccionar(conservadas) if lateral is not None else None
    return ResultadoFiltrado(filtrado, nuevo_lateral, conservadas, eliminados)


def filtrar_frecuencia(conjunto: ConjuntoDatos, umbral: int,
                       lateral: Optional[InformacionLateral] = None) -> ResultadoFiltrado:
    """
    Elimina las palabras cuya cuenta total en el corpus es <= umbral.

    Con umbral 0 el corpus no cambia. Aplicar dos veces el mismo umbral
    no elimina nada mas.

    Example:
        >>> # doc1: a:1 ; doc2: a:1 b:5 ; umbral 2 -> se elimina a (total 2)
    """
    if umbral < 0:
        raise ErrorConfiguracion(f"el umbral de frecuencia debe ser >= 0, recibido {umbral}")
    totales = np.asarray(conjunto.X.sum(axis=0)).ravel()
    conservadas = np.flatnonzero(totales > umbral)
    if umbral == 0 and len(conservadas) == conjunto.d:
        return ResultadoFiltrado(conjunto, lateral, conservadas, 0)
    logger.info("umbral %d: se conservan %d de %d palabras", umbral, len(conservadas), conjunto.d)
    return conservar_columnas(conjunto, conservadas, lateral)


def eliminar_palabras_parada(conjunto: ConjuntoDatos, palabras: Iterable[str],
                             lateral: Optional[InformacionLateral] = None) -> ResultadoFiltrado:
    """Quita del vocabulario las palabras de parada (sin distinguir mayusculas)."""
    if conjunto.vocabulario is None:
        raise ErrorConfiguracion("eliminar palabras de parada exige un vocabulario")
    parada = {p.lower() for p in palabras}
    conservadas = np.array([i for i, palabra in enumerate(conjunto.vocabulario)
                            if palabra.lower() not in parada], dtype=np.int64)
    logger.info("palabras de parada: se eliminan %d columnas", conjunto.d - len(conservadas))
    return conservar_columnas(conjunto, conservadas, lateral)


# =============================================================================
# PARTICIONES
# =============================================================================

def pliegues_k(n: int, k: int, semilla: int,
               etiquetas: Optional[np.ndarray] = None) -> PlanPliegues:
    """
    Reparte 0..n-1 en k pliegues cuyos tamanos difieren a lo sumo en uno.

    Con etiquetas, cada clase se baraja por separado y las clases se
    concatenan antes de repartir por turnos, de modo que la cuenta de
    cada clase en cada pliegue difiere a lo sumo en uno.

    Raises:
        ErrorConfiguracion: Si k < 2 o n < k.
    """
    if k < 2 or n < k:
        raise ErrorConfiguracion(f"se necesita 2 <= k <= n, recibido k={k}, n={n}")
    rng = generador_derivado(semilla)
    if etiquetas is None:
        orden = rng.permutation(n)
    else:
        etiquetas = np.asarray(etiquetas)
        if len(etiquetas) != n:
            raise ErrorForma(f"{len(etiquetas)} etiquetas para {n} instancias")
        partes = []
        for clase in np.unique(etiquetas):
            miembros = np.flatnonzero(etiquetas == clase)
            if len(miembros) < k:
                logger.warning("la clase %s tiene %d instancias, menos que %d pliegues",
                               clase, len(miembros), k)
            partes.append(rng.permutation(miembros))
        orden = np.concatenate(partes)

    posicion = np.arange(n) % k
    pliegues = [np.sort(orden[posicion == i]) for i in range(k)]
    return PlanPliegues(pliegues, semilla)


def dividir_prueba(n: int, fraccion: float, semilla: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Reserva una fraccion como prueba; devuelve (entrenamiento, prueba).

    Example:
        >>> entrenamiento, prueba = dividir_prueba(5000, 0.2, 0)   # 4000 / 1000
    """
    if not 0.0 < fraccion < 1.0:
        raise ErrorConfiguracion(f"la fraccion de prueba debe estar en (0, 1), recibida {fraccion}")
    numero_prueba = max(1, int(round(fraccion * n)))
    if numero_prueba >= n:
        raise ErrorDatos(f"{n} instancias no bastan para reservar prueba")
    orden = generador_derivado(semilla, 5).permutation(n)
    return np.sort(orden[numero_prueba:]), np.sort(orden[:numero_prueba])
