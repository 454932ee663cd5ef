#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Comparacion de Regularizadores
=============================================================================

Descripcion:
    Entrena cada regularizador sobre las mismas particiones externas,
    ajustando su hiperparametro con validacion cruzada interna en cada
    una, y agrupa las predicciones de prueba de todas las particiones
    para la prueba de McNemar.

Protocolo por columna:
    1. Para cada particion (entrenamiento, prueba):
       a. ajustar λ (o la tasa de dropout) en el entrenamiento
       b. entrenar con el valor elegido
       c. predecir la prueba
    2. Error medio sobre las particiones y predicciones concatenadas.

    Todas las columnas usan la misma semilla en una misma particion, de
    modo que dos columnas identicas producen predicciones identicas.

    Si una columna falla, se marca como fallida y el resto continua.

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from configuracion.config import TipoRegularizador
from entrenamiento.entrenador import (
    ConfigEntrenamiento, Datos, HistorialEntrenamiento, entrenar
)
from evaluacion.ajuste import EspecificacionRejilla, ajustar, config_con_valor
from evaluacion.metricas import error_clasificacion
from evaluacion.tablas import ColumnaResultado, TablaResultados
from red.red import predecir
from regularizadores.analitico import FuenteLaplaciano
from utilidades.errores import ErrorRegularizacion
from utilidades.helpers import semilla_derivada

logger = logging.getLogger(__name__)

RAMA_PARTICION = 20

Particion = Tuple[np.ndarray, np.ndarray]


@dataclass
class ResultadoColumna:
    columna: ColumnaResultado
    historiales: List[HistorialEntrenamiento] = field(default_factory=list)


def valor_fijo(config: ConfigEntrenamiento, tipo: TipoRegularizador) -> float:
    """Valor del [regularizador] usado cuando no se ajusta."""
    if tipo is TipoRegularizador.DROPOUT:
        return config.regularizador.tasa_dropout
    return config.regularizador.fuerza


def nombres_columnas(tipos: Sequence[TipoRegularizador]) -> List[str]:
    """Nombre de cada columna; las repeticiones reciben sufijo #2, #3..."""
    vistos: Dict[str, int] = {}
    nombres = []
    for tipo in tipos:
        vistos[tipo.value] = vistos.get(tipo.value, 0) + 1
        cuenta = vistos[tipo.value]
        nombres.append(tipo.value if cuenta == 1 else f"{tipo.value}#{cuenta}")
    return nombres


def evaluar_columna(nombre: str, tipo: TipoRegularizador, X: Datos, clases: np.ndarray,
                    particiones: Sequence[Particion], config_base: ConfigEntrenamiento,
                    rejilla: Optional[EspecificacionRejilla],
                    similitud: Optional[FuenteLaplaciano] = None,
                    fijos: Optional[Dict[str, int]] = None) -> ResultadoColumna:
    """
    Entrena un regularizador en todas las particiones.

    Args:
        nombre: Nombre de la columna.
        tipo: Regularizador.
        X, clases: Datos completos (clases desde 0).
        particiones: Pares (entrenamiento, prueba) de indices.
        config_base: Protocolo comun; su semilla es la maestra.
        rejilla: Rejilla de ajuste, o None para usar el valor fijo.
        similitud: Estructura de similitud para AN y ST.
        fijos: tamano_lote o iteraciones_max fijados por el usuario.
    """
    resultado = ResultadoColumna(ColumnaResultado(nombre))
    columna = resultado.columna
    predicciones = []
    try:
        for numero, (entrenamiento, prueba) in enumerate(particiones):
            semilla = semilla_derivada(config_base.semilla, RAMA_PARTICION, numero)
            base = config_con_valor(config_base, TipoRegularizador.NINGUNO, 0.0, semilla, fijos)
            if rejilla is not None and tipo is not TipoRegularizador.NINGUNO:
                valor = ajustar(rejilla, tipo, X[entrenamiento], clases[entrenamiento],
                                base, similitud, fijos=fijos).mejor
            else:
                valor = valor_fijo(config_base, tipo)

            params, historial = entrenar(config_con_valor(base, tipo, valor, fijos=fijos),
                                         X[entrenamiento], clases[entrenamiento], similitud)
            prediccion = predecir(params, X[prueba])
            columna.errores_pliegues.append(error_clasificacion(prediccion, clases[prueba]))
            columna.valores_elegidos.append(valor)
            predicciones.append(prediccion)
            resultado.historiales.append(historial)
            logger.info("%s, particion %d: error de prueba %.2f%% (valor %g)", nombre, numero,
                        columna.errores_pliegues[-1], valor)
    except ErrorRegularizacion as error:
        logger.warning("la columna %s falla: %s", nombre, error)
        columna.fallo = str(error)
        return resultado

    columna.predicciones = np.concatenate(predicciones)
    return resultado


def comparar(tipos: Sequence[TipoRegularizador], X: Datos, clases: np.ndarray,
             particiones: Sequence[Particion], config_base: ConfigEntrenamiento,
             rejilla: Optional[EspecificacionRejilla],
             similitud: Optional[FuenteLaplaciano] = None, conjunto: str = "",
             alfa: float = 0.05, exacta: bool = False,
             hilos: int = 1, fijos: Optional[Dict[str, int]] = None
             ) -> Tuple[TablaResultados, List[Tuple[str, HistorialEntrenamiento]]]:
    """
    Compara varios regularizadores sobre las mismas particiones.

    Returns:
        Tupla (tabla con marcas de significancia, pares (nombre, historial)
        para las curvas de aprendizaje).
    """
    clases = np.asarray(clases, dtype=np.int64)
    y_agrupado = np.concatenate([clases[prueba] for _, prueba in particiones])
    nombres = nombres_columnas(tipos)

    trabajos = [(nombre, tipo) for nombre, tipo in zip(nombres, tipos)]
    if hilos <= 1 or len(trabajos) == 1:
        resultados = [evaluar_columna(nombre, tipo, X, clases, particiones, config_base,
                                      rejilla, similitud, fijos) for nombre, tipo in trabajos]
    else:
        resultados = Parallel(n_jobs=hilos, prefer="threads")(
            delayed(evaluar_columna)(nombre, tipo, X, clases, particiones, config_base,
                                     rejilla, similitud, fijos) for nombre, tipo in trabajos)

    tabla = TablaResultados(conjunto, y_agrupado, alfa, exacta)
    historiales = []
    for resultado in resultados:
        tabla.agregar(resultado.columna)
        historiales.extend((resultado.columna.regularizador, h) for h in resultado.historiales)
    return tabla, historiales
