#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Ajuste de Hiperparametros
=============================================================================

Descripcion:
    Busqueda en rejilla de la fuerza λ (o de la tasa de dropout) con
    validacion cruzada interna. Cada candidato se puntua con el error de
    clasificacion medio sobre los pliegues internos y gana el menor; en
    caso de empate, el valor mas pequeno.

Semillas:
    El candidato c y el pliegue f entrenan con semilla_derivada(semilla,
    10, c, f), asi el resultado no depende del numero de hilos.

Uso:
    >>> rejilla = EspecificacionRejilla.por_defecto(artificial=True)
    >>> resultado = ajustar(rejilla, TipoRegularizador.ST, X, clases, config, estructura)
    >>> resultado.mejor

Version:
    0.1

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional

import numpy as np
from joblib import Parallel, delayed

from configuracion.config import (
    TipoRegularizador, PLIEGUES_INTERNOS, REJILLA_ARTIFICIAL, REJILLA_REAL, REJILLA_DROPOUT
)
from datos.corpus import pliegues_k
from entrenamiento.entrenador import ConfigEntrenamiento, Datos, entrenar
from evaluacion.metricas import error_clasificacion
from red.red import predecir
from regularizadores.analitico import FuenteLaplaciano
from utilidades.errores import ErrorConfiguracion, ErrorEntrenamiento, ErrorRegularizacion
from utilidades.helpers import semilla_derivada

logger = logging.getLogger(__name__)

# Rama de semillas reservada al ajuste
RAMA_AJUSTE = 10
RAMA_PLIEGUES_INTERNOS = 6

# evaluador(valor, indices_entrenamiento, indices_validacion, semilla) -> error en %
Evaluador = Callable[[float, np.ndarray, np.ndarray, int], float]


@dataclass(frozen=True)
class EspecificacionRejilla:
    """
    Valores candidatos por tipo de regularizador.

    Attributes:
        candidatos: Lista no vacia de valores para cada tipo.
        pliegues_internos: Pliegues de la validacion cruzada interna.
    """
    candidatos: Dict[TipoRegularizador, List[float]]
    pliegues_internos: int = PLIEGUES_INTERNOS

    def __post_init__(self):
        for tipo, valores in self.candidatos.items():
            if len(valores) == 0:
                raise ErrorConfiguracion(f"la rejilla de {tipo.value} esta vacia")
        if self.pliegues_internos < 2:
            raise ErrorConfiguracion(f"se necesitan al menos 2 pliegues internos, "
                                     f"recibidos {self.pliegues_internos}")

    @classmethod
    def por_defecto(cls, artificial: bool = True,
                    pliegues_internos: int = PLIEGUES_INTERNOS) -> "EspecificacionRejilla":
        """Rejillas del protocolo: artificial {10^k} o real [0.001 .. 10]."""
        fuerzas = REJILLA_ARTIFICIAL if artificial else REJILLA_REAL
        return cls({
            TipoRegularizador.AN: list(fuerzas),
            TipoRegularizador.ST: list(fuerzas),
            TipoRegularizador.L2: list(fuerzas),
            TipoRegularizador.DROPOUT: list(REJILLA_DROPOUT),
        }, pliegues_internos)

    def valores(self, tipo: TipoRegularizador) -> List[float]:
        if tipo not in self.candidatos:
            raise ErrorConfiguracion(f"no hay rejilla para {tipo.value}")
        return [float(v) for v in self.candidatos[tipo]]


@dataclass
class ResultadoAjuste:
    """
    Resultado de la busqueda.

    Attributes:
        mejor: Valor elegido.
        errores: Error medio de cada candidato que termino.
        fallidos: Candidatos descartados por error de entrenamiento.
    """
    mejor: float
    errores: Dict[float, float] = field(default_factory=dict)
    fallidos: List[float] = field(default_factory=list)


def config_con_valor(config: ConfigEntrenamiento, tipo: TipoRegularizador,
                     valor: float, semilla: Optional[int] = None,
                     fijos: Optional[Dict[str, int]] = None) -> ConfigEntrenamiento:
    """
    Copia de la configuracion con el regularizador `tipo` y el valor dado.

    El tamano de lote y el tope de iteraciones vuelven a los del protocolo
    para `tipo`, salvo los que aparezcan en `fijos`.
    """
    fijos = fijos or {}
    reg = config.regularizador
    if tipo is TipoRegularizador.DROPOUT:
        nuevo = replace(reg, tipo=tipo, tasa_dropout=valor)
    else:
        nuevo = replace(reg, tipo=tipo, fuerza=valor)
    return replace(config, regularizador=nuevo,
                   tamano_lote=fijos.get("tamano_lote"),
                   iteraciones_max=fijos.get("iteraciones_max"),
                   semilla=config.semilla if semilla is None else semilla)


def _evaluador_entrenamiento(tipo: TipoRegularizador, X: Datos, clases: np.ndarray,
                             config_base: ConfigEntrenamiento,
                             similitud: Optional[FuenteLaplaciano],
                             fijos: Optional[Dict[str, int]]) -> Evaluador:
    def evaluar(valor, entrenamiento, validacion, semilla):
        config = config_con_valor(config_base, tipo, valor, semilla, fijos)
        params, _ = entrenar(config, X[entrenamiento], clases[entrenamiento], similitud)
        return error_clasificacion(predecir(params, X[validacion]), clases[validacion])
    return evaluar


def _puntuar(evaluador: Evaluador, valor: float, entrenamiento, validacion, semilla):
    try:
        return evaluador(valor, entrenamiento, validacion, semilla)
    except ErrorRegularizacion as error:
        logger.warning("candidato %g descartado: %s", valor, error)
        return None


def ajustar(rejilla: EspecificacionRejilla, tipo: TipoRegularizador, X: Datos,
            clases: np.ndarray, config_base: ConfigEntrenamiento,
            similitud: Optional[FuenteLaplaciano] = None,
            evaluador: Optional[Evaluador] = None, hilos: int = 1,
            fijos: Optional[Dict[str, int]] = None) -> ResultadoAjuste:
    """
    Elige el valor de la rejilla con menor error medio de validacion cruzada.

    Args:
        rejilla: Candidatos y numero de pliegues internos.
        tipo: Regularizador a ajustar.
        X: Datos de entrenamiento.
        clases: Clases desde 0.
        config_base: Configuracion comun (dims, semilla, protocolo).
        similitud: Estructura de similitud para AN y ST.
        evaluador: Puntuacion alternativa (por defecto, entrenar y medir).
        hilos: Trabajos simultaneos.
        fijos: Valores de tamano_lote o iteraciones_max que no siguen al
               protocolo de `tipo`.

    Returns:
        ResultadoAjuste con el valor elegido.

    Raises:
        ErrorEntrenamiento: Si todos los candidatos fallan.
    """
    if tipo is TipoRegularizador.NINGUNO:
        return ResultadoAjuste(0.0)

    valores = rejilla.valores(tipo)
    clases = np.asarray(clases, dtype=np.int64)
    if evaluador is None:
        evaluador = _evaluador_entrenamiento(tipo, X, clases, config_base, similitud, fijos)

    plan = pliegues_k(len(clases), rejilla.pliegues_internos,
                      semilla_derivada(config_base.semilla, RAMA_PLIEGUES_INTERNOS), clases)
    tareas = [(c, f, valor) for c, valor in enumerate(valores) for f in range(plan.k)]

    def ejecutar(c, f, valor):
        entrenamiento, validacion = plan.particion(f)
        semilla = semilla_derivada(config_base.semilla, RAMA_AJUSTE, c, f)
        return _puntuar(evaluador, valor, entrenamiento, validacion, semilla)

    if hilos <= 1 or len(tareas) == 1:
        puntuaciones = [ejecutar(*tarea) for tarea in tareas]
    else:
        puntuaciones = Parallel(n_jobs=hilos, prefer="threads")(
            delayed(ejecutar)(*tarea) for tarea in tareas)

    resultado = ResultadoAjuste(mejor=float("nan"))
    for c, valor in enumerate(valores):
        propias = puntuaciones[c * plan.k:(c + 1) * plan.k]
        if any(p is None for p in propias):
            resultado.fallidos.append(valor)
            continue
        resultado.errores[valor] = float(np.mean(propias))
        logger.debug("%s = %g: error medio %.2f%%", tipo.value, valor, resultado.errores[valor])

    if not resultado.errores:
        raise ErrorEntrenamiento(f"todos los candidatos de {tipo.value} fallaron")
    resultado.mejor = min(resultado.errores, key=lambda v: (resultado.errores[v], v))
    logger.info("ajuste %s: elegido %g (error medio %.2f%%)", tipo.value,
                resultado.mejor, resultado.errores[resultado.mejor])
    return resultado
