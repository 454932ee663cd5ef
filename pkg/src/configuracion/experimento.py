#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Configuracion de Experimentos
=============================================================================

Descripcion:
    Lee los ficheros INI de experimento. Cada clave es opcional y toma por
    defecto la constante del protocolo definida en config.py; el valor
    "auto" deja que se resuelva segun el tipo de regularizador o el corpus.
    Las rutas relativas se interpretan respecto al directorio del fichero.

Secciones:
    [experimento]     nombre, semilla, salida
    [datos]           tipo (sintetico | bow), bow, prueba, vocabulario,
                      lateral, palabras_parada, nombres_clase,
                      umbral_frecuencia, corpus, directorio_sintetico
    [sintetico]       esquema, d, n, q
    [similitud]       fuente (lateral | sintetico | csv), ancho_banda,
                      fraccion_objetivo, banda_inferior, banda_superior,
                      fraccion_pares, archivo, dimension_maxima
    [red]             capas_ocultas
    [regularizador]   tipo, fuerza, tasa_dropout, vecindario, muestras
    [entrenamiento]   tamano_lote, iteraciones_max, evaluar_cada, paciencia,
                      fraccion_validacion, alfa, beta1, beta2, epsilon
    [evaluacion]      regularizadores, esquema (pliegues | particion),
                      pliegues_externos, pliegues_internos, rejilla,
                      rejilla_dropout, alfa_mcnemar, mcnemar_exacta,
                      fraccion_prueba, ajustar

Ejemplo:
    [datos]
    tipo = bow
    bow = ../datos/mini/corpus.txt
    lateral = ../datos/mini/lateral.txt

    [regularizador]
    tipo = ST
    fuerza = 0.1

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

import configparser
import logging
import os
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional

from configuracion.config import (
    TipoRegularizador, ALFA_ADAM, BETA1_ADAM, BETA2_ADAM, EPSILON_ADAM,
    EVALUAR_CADA, PACIENCIA, FRACCION_VALIDACION,
    MUESTRAS_POR_INSTANCIA, TAMANO_VECINDARIO,
    FRACCION_OBJETIVO, BANDA_SIMILITUD, FRACCION_PARES, DIMENSION_MAXIMA_NUCLEO,
    REJILLA_ARTIFICIAL, REJILLA_REAL, REJILLA_DROPOUT,
    PLIEGUES_EXTERNOS, PLIEGUES_INTERNOS, ALFA_MCNEMAR, FRACCION_PRUEBA,
    CAPAS_UNA_OCULTA, DIMENSION_SINTETICA, INSTANCIAS_SINTETICAS, CLASES_SINTETICAS,
    CORPUS_REALES
)
from utilidades.errores import ErrorConfiguracion

logger = logging.getLogger(__name__)

AUTO = "auto"
TIPOS_DATOS = ("sintetico", "bow")
FUENTES_SIMILITUD = ("lateral", "sintetico", "csv")
ESQUEMAS_EVALUACION = ("pliegues", "particion")
REGULARIZADORES_COMPARACION = [TipoRegularizador.ST, TipoRegularizador.AN,
                               TipoRegularizador.L2, TipoRegularizador.DROPOUT]


# =============================================================================
# SECCIONES
# =============================================================================

@dataclass
class SeccionExperimento:
    nombre: str = "experimento"
    semilla: int = 0
    salida: str = "resultados"


@dataclass
class SeccionDatos:
    tipo: str = "sintetico"
    bow: Optional[str] = None
    prueba: Optional[str] = None
    vocabulario: Optional[str] = None
    lateral: Optional[str] = None
    palabras_parada: Optional[str] = None
    nombres_clase: Optional[str] = None
    umbral_frecuencia: Optional[int] = None
    corpus: Optional[str] = None
    directorio_sintetico: Optional[str] = None


@dataclass
class SeccionSintetico:
    esquema: str = "A1"
    d: int = DIMENSION_SINTETICA
    n: int = INSTANCIAS_SINTETICAS
    q: int = CLASES_SINTETICAS


@dataclass
class SeccionSimilitud:
    fuente: Optional[str] = None
    ancho_banda: Optional[float] = None
    fraccion_objetivo: float = FRACCION_OBJETIVO
    banda_inferior: float = BANDA_SIMILITUD[0]
    banda_superior: float = BANDA_SIMILITUD[1]
    fraccion_pares: float = FRACCION_PARES
    dimension_maxima: int = DIMENSION_MAXIMA_NUCLEO
    archivo: Optional[str] = None


@dataclass
class SeccionRed:
    capas_ocultas: List[int] = field(default_factory=lambda: list(CAPAS_UNA_OCULTA))


@dataclass
class SeccionRegularizador:
    tipo: TipoRegularizador = TipoRegularizador.NINGUNO
    fuerza: float = 0.0
    tasa_dropout: float = 0.5
    vecindario: float = TAMANO_VECINDARIO
    muestras: int = MUESTRAS_POR_INSTANCIA


@dataclass
class SeccionEntrenamiento:
    tamano_lote: Optional[int] = None
    iteraciones_max: Optional[int] = None
    evaluar_cada: int = EVALUAR_CADA
    paciencia: int = PACIENCIA
    fraccion_validacion: float = FRACCION_VALIDACION
    alfa: float = ALFA_ADAM
    beta1: float = BETA1_ADAM
    beta2: float = BETA2_ADAM
    epsilon: float = EPSILON_ADAM


@dataclass
class SeccionEvaluacion:
    regularizadores: List[TipoRegularizador] = field(
        default_factory=lambda: list(REGULARIZADORES_COMPARACION))
    esquema: str = "pliegues"
    pliegues_externos: int = PLIEGUES_EXTERNOS
    pliegues_internos: int = PLIEGUES_INTERNOS
    rejilla: Optional[List[float]] = None
    rejilla_dropout: List[float] = field(default_factory=lambda: list(REJILLA_DROPOUT))
    alfa_mcnemar: float = ALFA_MCNEMAR
    mcnemar_exacta: bool = False
    fraccion_prueba: float = FRACCION_PRUEBA
    ajustar: bool = True


# =============================================================================
# CONVERSORES
# =============================================================================

def _entero(texto: str) -> int:
    return int(texto)


def _real(texto: str) -> float:
    return float(texto)


def _booleano(texto: str) -> bool:
    valor = texto.strip().lower()
    if valor in ("1", "si", "sí", "true", "yes", "on"):
        return True
    if valor in ("0", "no", "false", "off"):
        return False
    raise ValueError(texto)


def _lista(conversor: Callable[[str], Any]) -> Callable[[str], list]:
    def convertir(texto: str) -> list:
        partes = [p for p in texto.replace(";", ",").split(",") if p.strip()]
        return [conversor(p.strip()) for p in partes]
    return convertir


def _opcional(conversor: Callable[[str], Any]) -> Callable[[str], Any]:
    """'auto' (o vacio) devuelve None para resolverlo mas tarde."""
    def convertir(texto: str):
        if texto.strip().lower() in (AUTO, ""):
            return None
        return conversor(texto)
    return convertir


def _tipo(texto: str) -> TipoRegularizador:
    return TipoRegularizador.desde_texto(texto)


# Conversor de cada clave conocida, por seccion
CLAVES: Dict[str, Dict[str, Callable[[str], Any]]] = {
    "experimento": {"nombre": str, "semilla": _entero, "salida": str},
    "datos": {"tipo": str.lower, "bow": str, "prueba": str, "vocabulario": str,
              "lateral": str, "palabras_parada": str, "nombres_clase": str,
              "umbral_frecuencia": _opcional(_entero), "corpus": str.lower,
              "directorio_sintetico": str},
    "sintetico": {"esquema": str.upper, "d": _entero, "n": _entero, "q": _entero},
    "similitud": {"fuente": _opcional(str.lower), "ancho_banda": _opcional(_real),
                  "fraccion_objetivo": _real, "banda_inferior": _real,
                  "banda_superior": _real, "fraccion_pares": _real, "archivo": str,
                  "dimension_maxima": _entero},
    "red": {"capas_ocultas": _lista(_entero)},
    "regularizador": {"tipo": _tipo, "fuerza": _real, "tasa_dropout": _real,
                      "vecindario": _real, "muestras": _entero},
    "entrenamiento": {"tamano_lote": _opcional(_entero), "iteraciones_max": _opcional(_entero),
                      "evaluar_cada": _entero, "paciencia": _entero,
                      "fraccion_validacion": _real, "alfa": _real, "beta1": _real,
                      "beta2": _real, "epsilon": _real},
    "evaluacion": {"regularizadores": _lista(_tipo), "esquema": str.lower,
                   "pliegues_externos": _entero, "pliegues_internos": _entero,
                   "rejilla": _opcional(_lista(_real)), "rejilla_dropout": _lista(_real),
                   "alfa_mcnemar": _real, "mcnemar_exacta": _booleano,
                   "fraccion_prueba": _real, "ajustar": _booleano},
}

# Claves que contienen rutas
RUTAS = {"datos": ("bow", "prueba", "vocabulario", "lateral", "palabras_parada",
                   "nombres_clase", "directorio_sintetico"),
         "similitud": ("archivo",)}


# =============================================================================
# CONFIGURACION COMPLETA
# =============================================================================

@dataclass
class ConfigExperimento:
    """
    Configuracion de un experimento, seccion a seccion.

    Example:
        >>> config = ConfigExperimento.desde_archivo("configs/mini.ini")
        >>> config.regularizador.tipo
        <TipoRegularizador.ST: 'ST'>
    """
    experimento: SeccionExperimento = field(default_factory=SeccionExperimento)
    datos: SeccionDatos = field(default_factory=SeccionDatos)
    sintetico: SeccionSintetico = field(default_factory=SeccionSintetico)
    similitud: SeccionSimilitud = field(default_factory=SeccionSimilitud)
    red: SeccionRed = field(default_factory=SeccionRed)
    regularizador: SeccionRegularizador = field(default_factory=SeccionRegularizador)
    entrenamiento: SeccionEntrenamiento = field(default_factory=SeccionEntrenamiento)
    evaluacion: SeccionEvaluacion = field(default_factory=SeccionEvaluacion)
    origen: Optional[str] = None

    # -------------------------------------------------------------------------
    # Lectura
    # -------------------------------------------------------------------------

    @classmethod
    def desde_texto(cls, texto: str, directorio_base: str = ".",
                    origen: Optional[str] = None) -> "ConfigExperimento":
        """Interpreta el contenido de un INI y valida el resultado."""
        lector = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
        try:
            lector.read_string(texto, source=origen or "<texto>")
        except configparser.Error as error:
            raise ErrorConfiguracion(f"fichero de configuracion ilegible: {error}")

        config = cls(origen=origen)
        for nombre_seccion in lector.sections():
            if nombre_seccion not in CLAVES:
                raise ErrorConfiguracion(f"seccion desconocida [{nombre_seccion}]")
            seccion = getattr(config, nombre_seccion)
            for clave, texto_valor in lector.items(nombre_seccion):
                conversor = CLAVES[nombre_seccion].get(clave)
                if conversor is None:
                    raise ErrorConfiguracion(f"[{nombre_seccion}] clave desconocida '{clave}'")
                try:
                    valor = conversor(texto_valor.strip())
                except ValueError as error:
                    raise ErrorConfiguracion(f"[{nombre_seccion}] {clave}: valor invalido "
                                             f"'{texto_valor}' ({error})")
                if clave in RUTAS.get(nombre_seccion, ()) and not os.path.isabs(valor):
                    valor = os.path.normpath(os.path.join(directorio_base, valor))
                setattr(seccion, clave, valor)

        config.resolver()
        config.validar()
        return config

    @classmethod
    def desde_archivo(cls, ruta: str) -> "ConfigExperimento":
        if not os.path.isfile(ruta):
            raise ErrorConfiguracion(f"no existe el fichero de configuracion {ruta}")
        with open(ruta, "r", encoding="utf-8") as fichero:
            texto = fichero.read()
        logger.debug("configuracion leida de %s", ruta)
        return cls.desde_texto(texto, os.path.dirname(os.path.abspath(ruta)), ruta)

    # -------------------------------------------------------------------------
    # Resolucion y validacion
    # -------------------------------------------------------------------------

    def resolver(self) -> None:
        """Sustituye los valores automaticos que no dependen del entrenamiento."""
        datos = self.datos
        if datos.umbral_frecuencia is None:
            datos.umbral_frecuencia = CORPUS_REALES.get(datos.corpus or "", {}).get("umbral", 0)
        if self.similitud.fuente is None:
            if self.similitud.archivo:
                self.similitud.fuente = "csv"
            elif datos.lateral:
                self.similitud.fuente = "lateral"
            elif datos.tipo == "sintetico":
                self.similitud.fuente = "sintetico"
        if self.evaluacion.rejilla is None:
            self.evaluacion.rejilla = list(REJILLA_ARTIFICIAL if datos.tipo == "sintetico"
                                           else REJILLA_REAL)

    def necesita_similitud(self) -> bool:
        tipos = set(self.evaluacion.regularizadores) | {self.regularizador.tipo}
        return bool(tipos & {TipoRegularizador.AN, TipoRegularizador.ST})

    def validar(self) -> None:
        """
        Comprueba la coherencia de la configuracion.

        Raises:
            ErrorConfiguracion: Con el primer problema encontrado.
        """
        datos, similitud = self.datos, self.similitud
        if datos.tipo not in TIPOS_DATOS:
            raise ErrorConfiguracion(f"[datos] tipo debe ser uno de {TIPOS_DATOS}")
        if datos.tipo == "bow" and not datos.bow:
            raise ErrorConfiguracion("[datos] tipo = bow exige la clave 'bow'")
        for seccion, claves in RUTAS.items():
            for clave in claves:
                ruta = getattr(getattr(self, seccion), clave)
                if ruta and not os.path.exists(ruta):
                    raise ErrorConfiguracion(f"[{seccion}] {clave}: no existe {ruta}")
        if datos.umbral_frecuencia < 0:
            raise ErrorConfiguracion("[datos] umbral_frecuencia debe ser >= 0")

        # Exactamente una fuente de similitud
        if datos.lateral and similitud.archivo:
            raise ErrorConfiguracion("hay dos fuentes de similitud: [datos] lateral y "
                                     "[similitud] archivo")
        if similitud.fuente is not None and similitud.fuente not in FUENTES_SIMILITUD:
            raise ErrorConfiguracion(f"[similitud] fuente debe ser una de {FUENTES_SIMILITUD}")
        requisitos = {"lateral": datos.lateral, "csv": similitud.archivo,
                      "sintetico": datos.tipo == "sintetico"}
        if similitud.fuente is not None and not requisitos[similitud.fuente]:
            raise ErrorConfiguracion(f"[similitud] fuente = {similitud.fuente} no tiene datos "
                                     f"de los que partir")
        if similitud.fuente is None and self.necesita_similitud():
            raise ErrorConfiguracion("AN y ST necesitan una fuente de similitud")
        if similitud.ancho_banda is not None and similitud.ancho_banda <= 0:
            raise ErrorConfiguracion("[similitud] ancho_banda debe ser positivo")
        if not 0.0 <= similitud.banda_inferior <= similitud.banda_superior <= 1.0:
            raise ErrorConfiguracion("[similitud] se necesita 0 <= banda_inferior <= "
                                     "banda_superior <= 1")
        for clave in ("fraccion_objetivo", "fraccion_pares"):
            if not 0.0 < getattr(similitud, clave) <= 1.0:
                raise ErrorConfiguracion(f"[similitud] {clave} debe estar en (0, 1]")
        if similitud.dimension_maxima < 2:
            raise ErrorConfiguracion("[similitud] dimension_maxima debe ser al menos 2")

        if not self.red.capas_ocultas or min(self.red.capas_ocultas) < 1:
            raise ErrorConfiguracion("[red] capas_ocultas necesita tamanos positivos")

        evaluacion = self.evaluacion
        if evaluacion.esquema not in ESQUEMAS_EVALUACION:
            raise ErrorConfiguracion(f"[evaluacion] esquema debe ser uno de {ESQUEMAS_EVALUACION}")
        if len(evaluacion.regularizadores) < 2:
            raise ErrorConfiguracion("[evaluacion] se necesitan al menos dos regularizadores")
        if evaluacion.pliegues_externos < 2 or evaluacion.pliegues_internos < 2:
            raise ErrorConfiguracion("[evaluacion] los pliegues deben ser >= 2")
        if not evaluacion.rejilla or not evaluacion.rejilla_dropout:
            raise ErrorConfiguracion("[evaluacion] las rejillas no pueden estar vacias")
        if not 0.0 < evaluacion.alfa_mcnemar < 1.0:
            raise ErrorConfiguracion("[evaluacion] alfa_mcnemar debe estar en (0, 1)")
        if not 0.0 < evaluacion.fraccion_prueba < 1.0:
            raise ErrorConfiguracion("[evaluacion] fraccion_prueba debe estar en (0, 1)")

    # -------------------------------------------------------------------------
    # Serializacion
    # -------------------------------------------------------------------------

    def a_dict(self) -> Dict[str, Any]:
        """Configuracion resuelta apta para JSON (enums por su valor)."""
        def limpiar(valor):
            if isinstance(valor, Enum):
                return valor.value
            if isinstance(valor, dict):
                return {k: limpiar(v) for k, v in valor.items()}
            if isinstance(valor, (list, tuple)):
                return [limpiar(v) for v in valor]
            return valor
        return limpiar(asdict(self))
