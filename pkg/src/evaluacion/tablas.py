#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tablas de Resultados
=============================================================================

Descripcion:
    Tabla de errores por conjunto de datos (filas) y regularizador
    (columnas). Cada celda lleva el error medio y una marca por cada
    columna posterior: '+' significativamente mejor, '-' peor, '=' sin
    diferencia. Una columna cuyo entrenamiento fallo muestra "fallo" y
    las comparaciones con ella muestran '?'.

Formato CSV:
    conjunto,regularizador,error_medio,errores_pliegues,lambda_elegido,marcas
    Las listas por pliegue se separan con ';'.

Ejemplo de texto:
    conjunto   ST          AN        L2       DROPOUT
    A1         43.70 +++   44.00 ++  52.70 =  53.60

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from configuracion.config import ALFA_MCNEMAR
from evaluacion.metricas import mcnemar
from utilidades.errores import ErrorDatos
from utilidades.helpers import escribir_texto_atomico

logger = logging.getLogger(__name__)

CAMPOS = ["conjunto", "regularizador", "error_medio", "errores_pliegues",
          "lambda_elegido", "marcas"]
FALLO = "fallo"
DESCONOCIDO = "?"


@dataclass
class ColumnaResultado:
    """
    Resultado de un regularizador sobre un conjunto.

    Attributes:
        regularizador: Nombre de la columna.
        errores_pliegues: Error de prueba de cada pliegue externo.
        valores_elegidos: λ (o tasa) elegido en cada pliegue.
        predicciones: Predicciones de prueba agrupadas de todos los pliegues.
        fallo: Mensaje si el entrenamiento no termino.
    """
    regularizador: str
    errores_pliegues: List[float] = field(default_factory=list)
    valores_elegidos: List[float] = field(default_factory=list)
    predicciones: Optional[np.ndarray] = None
    fallo: Optional[str] = None

    @property
    def fallida(self) -> bool:
        return self.fallo is not None

    @property
    def error_medio(self) -> float:
        return float(np.mean(self.errores_pliegues)) if self.errores_pliegues else float("nan")


class TablaResultados:
    """
    Columnas de un conjunto de datos y sus comparaciones por pares.

    Las predicciones de todas las columnas deben referirse a las mismas
    instancias, en el mismo orden que `y`.
    """

    def __init__(self, conjunto: str, y: Sequence[int], alfa: float = ALFA_MCNEMAR,
                 exacta: bool = False):
        self.conjunto = conjunto
        self.y = np.asarray(y)
        self.alfa = alfa
        self.exacta = exacta
        self.columnas: List[ColumnaResultado] = []

    def agregar(self, columna: ColumnaResultado) -> None:
        if not columna.fallida and (columna.predicciones is None
                                    or len(columna.predicciones) != len(self.y)):
            raise ErrorDatos(f"la columna {columna.regularizador} no tiene una prediccion "
                             f"por instancia de prueba")
        self.columnas.append(columna)

    def marcas(self) -> List[str]:
        """Marcas de cada columna frente a todas las posteriores, en orden."""
        resultado = []
        for i, columna in enumerate(self.columnas):
            simbolos = []
            for otra in self.columnas[i + 1:]:
                if columna.fallida or otra.fallida:
                    simbolos.append(DESCONOCIDO)
                    continue
                comparacion = mcnemar(columna.predicciones, otra.predicciones, self.y,
                                      self.alfa, self.exacta)
                simbolos.append(comparacion.marca)
            resultado.append("".join(simbolos))
        return resultado

    def filas(self) -> List[Dict[str, str]]:
        marcas = self.marcas()
        filas = []
        for columna, marcas_columna in zip(self.columnas, marcas):
            filas.append({
                "conjunto": self.conjunto,
                "regularizador": columna.regularizador,
                "error_medio": FALLO if columna.fallida else repr(columna.error_medio),
                "errores_pliegues": ";".join(repr(e) for e in columna.errores_pliegues),
                "lambda_elegido": ";".join(repr(v) for v in columna.valores_elegidos),
                "marcas": marcas_columna,
            })
        return filas

    def a_csv(self) -> str:
        return filas_a_csv(self.filas())

    def a_texto(self) -> str:
        return renderizar_texto(self.filas())

    def guardar(self, ruta_csv: str, ruta_texto: Optional[str] = None) -> None:
        escribir_texto_atomico(ruta_csv, self.a_csv())
        if ruta_texto:
            escribir_texto_atomico(ruta_texto, self.a_texto())


def filas_a_csv(filas: Sequence[Dict[str, str]]) -> str:
    salida = io.StringIO()
    escritor = csv.DictWriter(salida, fieldnames=CAMPOS, lineterminator="\n")
    escritor.writeheader()
    escritor.writerows(filas)
    return salida.getvalue()


def cargar_csv(ruta: str) -> List[Dict[str, str]]:
    """Lee un CSV de resultados y comprueba la cabecera."""
    with open(ruta, "r", encoding="utf-8", newline="") as fichero:
        lector = csv.DictReader(fichero)
        if lector.fieldnames is None or list(lector.fieldnames) != CAMPOS:
            raise ErrorDatos(f"{ruta}: cabecera inesperada {lector.fieldnames}")
        return list(lector)


def _celda(fila: Optional[Dict[str, str]]) -> str:
    if fila is None:
        return ""
    if fila["error_medio"] == FALLO:
        return FALLO
    texto = f"{float(fila['error_medio']):.2f}"
    return f"{texto} {fila['marcas']}" if fila["marcas"] else texto


def renderizar_texto(filas: Sequence[Dict[str, str]]) -> str:
    """
    Tabla alineada: una fila por conjunto y una columna por regularizador,
    en el orden de primera aparicion.
    """
    conjuntos: List[str] = []
    regularizadores: List[str] = []
    celdas: Dict[tuple, Dict[str, str]] = {}
    for fila in filas:
        if fila["conjunto"] not in conjuntos:
            conjuntos.append(fila["conjunto"])
        if fila["regularizador"] not in regularizadores:
            regularizadores.append(fila["regularizador"])
        celdas[(fila["conjunto"], fila["regularizador"])] = fila

    tabla = [["conjunto"] + regularizadores]
    for conjunto in conjuntos:
        tabla.append([conjunto] + [_celda(celdas.get((conjunto, r))) for r in regularizadores])
    anchos = [max(len(linea[i]) for linea in tabla) for i in range(len(tabla[0]))]
    return "\n".join("  ".join(valor.ljust(ancho) for valor, ancho in zip(linea, anchos)).rstrip()
                     for linea in tabla) + "\n"


def combinar(rutas: Sequence[str]) -> List[Dict[str, str]]:
    """Une varios CSV de resultados; un conjunto repetido conserva la ultima version."""
    unidas: Dict[tuple, Dict[str, str]] = {}
    for ruta in rutas:
        for fila in cargar_csv(ruta):
            clave = (fila["conjunto"], fila["regularizador"])
            if clave in unidas:
                logger.warning("%s: %s/%s repetido, se usa esta version", ruta, *clave)
            unidas[clave] = fila
    return list(unidas.values())

