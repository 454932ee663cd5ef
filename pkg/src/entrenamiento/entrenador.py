#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Entrenamiento
=============================================================================

Descripcion:
    Bucle de entrenamiento por mini-lotes con Adam y parada temprana sobre
    un conjunto de validacion. El gradiente total es el de la entropia
    cruzada mas λ veces el del regularizador elegido.

Protocolo:
    1. Se baraja una vez con la semilla y se reserva la fraccion de
       validacion.
    2. Cada epoca recorre el resto en un orden nuevo, derivado de la
       semilla y del numero de epoca.
    3. Cada `evaluar_cada` actualizaciones se mide el error de validacion.
    4. Se para al llegar a `iteraciones_max` o cuando el error sube
       `paciencia` veces seguidas.
    5. Se devuelven los parametros del mejor punto de control (el primero
       en caso de empate).

Flujos aleatorios (ver utilidades.generador_derivado):
    - semilla: inicializacion de Glorot
    - (semilla, 1): regularizador (pares ST, mascaras de dropout)
    - (semilla, 2, epoca): orden de cada epoca
    - (semilla, 3): particion de validacion

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
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp

from configuracion.config import (
    TipoRegularizador, ALFA_ADAM, BETA1_ADAM, BETA2_ADAM, EPSILON_ADAM,
    TAMANO_LOTE, ITERACIONES_MAX_AN, ITERACIONES_MAX_UNA_CAPA,
    ITERACIONES_MAX_VARIAS_CAPAS, EVALUAR_CADA, PACIENCIA, FRACCION_VALIDACION
)
from evaluacion.metricas import error_clasificacion
from red.red import (
    Gradientes, ParametrosRed, codificar_one_hot, gradientes_perdida,
    inicializar_glorot, perdida_entropia_cruzada, predecir, propagar
)
from regularizadores.analitico import FuenteLaplaciano, penalizacion_gradiente_an
from regularizadores.clasicos import penalizacion_gradiente_l2, propagar_con_dropout
from regularizadores.estocastico import generar_pares_st, penalizacion_gradiente_st
from regularizadores.tipos import ConfigRegularizador
from similitud.similitud import EstructuraSimilitud
from utilidades.errores import ErrorConfiguracion, ErrorDatos, ErrorEntrenamiento
from utilidades.helpers import Temporizador, formatear_tiempo, generador_derivado

logger = logging.getLogger(__name__)

RAZON_ITERACIONES = "iteraciones_max"
RAZON_PARADA_TEMPRANA = "parada_temprana"

Datos = Union[np.ndarray, sp.spmatrix]


# =============================================================================
# OPTIMIZADOR ADAM
# =============================================================================

@dataclass
class EstadoAdam:
    """
    Momentos de Adam por parametro.

    Attributes:
        m (List[np.ndarray]): Primer momento, en el orden de aplanar().
        v (List[np.ndarray]): Segundo momento (no negativo).
        t (int): Pasos dados.
    """
    m: List[np.ndarray]
    v: List[np.ndarray]
    t: int = 0
    alfa: float = ALFA_ADAM
    beta1: float = BETA1_ADAM
    beta2: float = BETA2_ADAM
    epsilon: float = EPSILON_ADAM

    @classmethod
    def inicial(cls, params: ParametrosRed, alfa: float = ALFA_ADAM,
                beta1: float = BETA1_ADAM, beta2: float = BETA2_ADAM,
                epsilon: float = EPSILON_ADAM) -> "EstadoAdam":
        ceros = [np.zeros_like(p) for p in _lista_parametros(params.pesos, params.sesgos)]
        return cls([c.copy() for c in ceros], ceros, 0, alfa, beta1, beta2, epsilon)


def _lista_parametros(pesos: Sequence[np.ndarray], sesgos: Sequence[np.ndarray]) -> List[np.ndarray]:
    lista = []
    for w, b in zip(pesos, sesgos):
        lista.extend((w, b))
    return lista


def paso_adam(estado: EstadoAdam, params: ParametrosRed,
              gradientes: Gradientes) -> Tuple[EstadoAdam, ParametrosRed]:
    """
    Un paso de Adam con correccion de sesgo.

        m <- β1 m + (1 - β1) g
        v <- β2 v + (1 - β2) g²
        θ <- θ - α m̂ / (sqrt(v̂) + ε),  m̂ = m / (1 - β1ᵗ), v̂ = v / (1 - β2ᵗ)

    No modifica sus argumentos.

    Raises:
        ErrorEntrenamiento: Si algun gradiente no es finito.
    """
    if not gradientes.es_finito():
        raise ErrorEntrenamiento(f"gradiente no finito en el paso {estado.t + 1}")

    t = estado.t + 1
    correccion1 = 1.0 - estado.beta1 ** t
    correccion2 = 1.0 - estado.beta2 ** t
    valores = _lista_parametros(params.pesos, params.sesgos)
    derivadas = _lista_parametros(gradientes.pesos, gradientes.sesgos)

    m, v, nuevos = [], [], []
    for theta, g, m_anterior, v_anterior in zip(valores, derivadas, estado.m, estado.v):
        m_k = estado.beta1 * m_anterior + (1.0 - estado.beta1) * g
        v_k = estado.beta2 * v_anterior + (1.0 - estado.beta2) * g * g
        m_hat = m_k / correccion1
        v_hat = v_k / correccion2
        nuevos.append(theta - estado.alfa * m_hat / (np.sqrt(v_hat) + estado.epsilon))
        m.append(m_k)
        v.append(v_k)

    nuevo_estado = EstadoAdam(m, v, t, estado.alfa, estado.beta1, estado.beta2, estado.epsilon)
    return nuevo_estado, ParametrosRed(nuevos[0::2], nuevos[1::2], params.activacion)


# =============================================================================
# CONFIGURACION E HISTORIAL
# =============================================================================

@dataclass
class ConfigEntrenamiento:
    """
    Parametros de un entrenamiento.

    Los campos a None toman el valor del protocolo segun el tipo de
    regularizador y el numero de capas ocultas.

    Attributes:
        dims: [d, h_1, ..., m].
        regularizador: Regularizador activo.
        tamano_lote: 5 para AN, 20 para el resto.
        iteraciones_max: 5000 para AN; 10000 (una capa) o 20000 (mas).
        evaluar_cada: Actualizaciones entre evaluaciones.
        paciencia: Subidas consecutivas del error que detienen.
        fraccion_validacion: Parte reservada a validacion, en (0, 1).
        semilla: Semilla maestra.
    """
    dims: List[int]
    regularizador: ConfigRegularizador = field(default_factory=ConfigRegularizador)
    tamano_lote: Optional[int] = None
    iteraciones_max: Optional[int] = None
    evaluar_cada: int = EVALUAR_CADA
    paciencia: int = PACIENCIA
    fraccion_validacion: float = FRACCION_VALIDACION
    semilla: int = 0
    alfa: float = ALFA_ADAM
    beta1: float = BETA1_ADAM
    beta2: float = BETA2_ADAM
    epsilon: float = EPSILON_ADAM

    def __post_init__(self):
        self.dims = [int(h) for h in self.dims]
        tipo = self.regularizador.tipo
        if self.tamano_lote is None:
            self.tamano_lote = TAMANO_LOTE[tipo]
        if self.iteraciones_max is None:
            if tipo is TipoRegularizador.AN:
                self.iteraciones_max = ITERACIONES_MAX_AN
            elif len(self.dims) <= 3:
                self.iteraciones_max = ITERACIONES_MAX_UNA_CAPA
            else:
                self.iteraciones_max = ITERACIONES_MAX_VARIAS_CAPAS

        if len(self.dims) < 2 or min(self.dims) < 1:
            raise ErrorConfiguracion(f"dimensiones de red invalidas: {self.dims}")
        if self.tamano_lote < 1:
            raise ErrorConfiguracion(f"tamano de lote invalido: {self.tamano_lote}")
        if self.iteraciones_max < 1 or self.evaluar_cada < 1:
            raise ErrorConfiguracion("iteraciones_max y evaluar_cada deben ser >= 1")
        if self.paciencia < 1:
            raise ErrorConfiguracion(f"paciencia invalida: {self.paciencia}")
        if not (0.0 < self.fraccion_validacion < 1.0):
            raise ErrorConfiguracion(f"la fraccion de validacion debe estar en (0, 1), "
                                     f"recibida {self.fraccion_validacion}")


@dataclass
class HistorialEntrenamiento:
    """
    Registro de las evaluaciones de validacion.

    Attributes:
        indices: Numero de actualizacion de cada evaluacion (creciente).
        perdidas: Objetivo medio por instancia desde la evaluacion anterior.
        errores_validacion: Error de validacion en porcentaje.
        razon_parada: RAZON_ITERACIONES o RAZON_PARADA_TEMPRANA.
        indice_mejor: Posicion en las listas del mejor punto de control.
        actualizaciones: Pasos de Adam dados (uno por mini-lote).
        segundos: Duracion del entrenamiento.
        indices_validacion: Instancias reservadas a validacion.
    """
    indices: List[int] = field(default_factory=list)
    perdidas: List[float] = field(default_factory=list)
    errores_validacion: List[float] = field(default_factory=list)
    razon_parada: str = RAZON_ITERACIONES
    indice_mejor: int = -1
    actualizaciones: int = 0
    segundos: float = 0.0
    indices_validacion: Optional[np.ndarray] = None

    def registrar(self, actualizacion: int, perdida: float, error: float) -> None:
        self.indices.append(int(actualizacion))
        self.perdidas.append(float(perdida))
        self.errores_validacion.append(float(error))

    @property
    def mejor_error(self) -> float:
        return self.errores_validacion[self.indice_mejor]

    def a_csv(self) -> str:
        """Historial como CSV "update_index,train_loss,validation_error"."""
        lineas = ["update_index,train_loss,validation_error"]
        lineas.extend(f"{i},{p!r},{e!r}" for i, p, e in
                      zip(self.indices, self.perdidas, self.errores_validacion))
        return "\n".join(lineas) + "\n"


class ControlParada:
    """
    Contador de subidas consecutivas del error de validacion.

    El contador aumenta cuando el error es estrictamente mayor que el
    registrado justo antes y vuelve a cero en otro caso; al llegar a la
    paciencia se ordena parar. Tambien recuerda el mejor error (el primero
    en caso de empate).

    Example:
        >>> control = ControlParada(paciencia=2)
        >>> [control.registrar(e) for e in (5.0, 6.0, 7.0)]
        [False, False, True]
    """

    def __init__(self, paciencia: int = PACIENCIA):
        self.paciencia = paciencia
        self.contador = 0
        self.anterior: Optional[float] = None
        self.mejor: Optional[float] = None
        self.mejora = False

    def registrar(self, error: float) -> bool:
        """Anota un error; devuelve True si hay que detenerse."""
        if self.anterior is not None and error > self.anterior:
            self.contador += 1
        else:
            self.contador = 0
        self.anterior = error

        self.mejora = self.mejor is None or error < self.mejor
        if self.mejora:
            self.mejor = error
        return self.contador >= self.paciencia


# =============================================================================
# ENTRENAMIENTO
# =============================================================================

def _filas_densas(X: Datos, indices: np.ndarray) -> np.ndarray:
    filas = X[indices]
    if sp.issparse(filas):
        filas = filas.toarray()
    return np.asarray(filas, dtype=np.float64)


def _gradiente_regularizador(config: ConfigEntrenamiento, params: ParametrosRed,
                             Xb: np.ndarray, traza, similitud: Optional[FuenteLaplaciano],
                             rng: np.random.Generator) -> Tuple[float, Optional[Gradientes]]:
    """Penalizacion y gradiente del regularizador (sin multiplicar por λ)."""
    reg = config.regularizador
    if reg.tipo is TipoRegularizador.AN:
        return penalizacion_gradiente_an(params, Xb, similitud, traza=traza)
    if reg.tipo is TipoRegularizador.ST:
        pares = generar_pares_st(Xb, similitud, reg.muestras, reg.vecindario, rng)
        return penalizacion_gradiente_st(params, pares)
    if reg.tipo is TipoRegularizador.L2:
        return penalizacion_gradiente_l2(params)
    return 0.0, None


def entrenar(config: ConfigEntrenamiento, X: Datos, clases: np.ndarray,
             similitud: Optional[FuenteLaplaciano] = None
             ) -> Tuple[ParametrosRed, HistorialEntrenamiento]:
    """
    Entrena una red con el protocolo de parada temprana.

    Args:
        config: Configuracion del entrenamiento.
        X: Instancias (n, d), densas o dispersas.
        clases: Clase de cada instancia, desde 0.
        similitud: Estructura de similitud (AN, ST) o Laplaciano (AN).

    Returns:
        Tupla (parametros del mejor punto de control, historial).

    Raises:
        ErrorConfiguracion: Dimensiones incoherentes o falta la similitud.
        ErrorDatos: Menos de dos clases o una clase ausente del
                    entrenamiento tras reservar la validacion.
        ErrorEntrenamiento: Gradiente no finito.
    """
    clases = np.asarray(clases, dtype=np.int64)
    n, d = X.shape
    reg = config.regularizador
    m = config.dims[-1]

    # -------------------------------------------------------------------------
    # Comprobaciones
    # -------------------------------------------------------------------------
    if config.dims[0] != d:
        raise ErrorConfiguracion(f"la red espera {config.dims[0]} caracteristicas y los datos tienen {d}")
    if len(clases) != n:
        raise ErrorDatos(f"{n} instancias y {len(clases)} clases")
    presentes = np.unique(clases)
    if len(presentes) < 2:
        raise ErrorDatos("se necesitan al menos dos clases para entrenar")
    if presentes.min() < 0 or presentes.max() >= m:
        raise ErrorConfiguracion(f"la red tiene {m} salidas y hay clases fuera de [0, {m})")
    if reg.activo and reg.tipo in (TipoRegularizador.AN, TipoRegularizador.ST) and similitud is None:
        raise ErrorConfiguracion(f"el regularizador {reg.tipo.value} necesita una similitud")
    if reg.activo and reg.tipo is TipoRegularizador.ST:
        if not isinstance(similitud, EstructuraSimilitud):
            raise ErrorConfiguracion("el regularizador ST necesita la lista de pares similares")
        if not similitud.tiene_pares:
            similitud = EstructuraSimilitud.desde_matriz(similitud.similitud)

    # -------------------------------------------------------------------------
    # Particion de validacion
    # -------------------------------------------------------------------------
    orden = generador_derivado(config.semilla, 3).permutation(n)
    numero_validacion = max(1, int(round(config.fraccion_validacion * n)))
    if numero_validacion >= n:
        raise ErrorDatos(f"{n} instancias no bastan para reservar validacion")
    indices_validacion = np.sort(orden[:numero_validacion])
    indices_entrenamiento = np.sort(orden[numero_validacion:])
    ausentes = np.setdiff1d(presentes, clases[indices_entrenamiento])
    if len(ausentes):
        raise ErrorDatos(f"clases sin instancias de entrenamiento: {(ausentes + 1).tolist()}")

    X_validacion = X[indices_validacion]
    y_validacion = clases[indices_validacion]

    # -------------------------------------------------------------------------
    # Estado inicial
    # -------------------------------------------------------------------------
    params = inicializar_glorot(config.dims, config.semilla)
    estado = EstadoAdam.inicial(params, config.alfa, config.beta1, config.beta2, config.epsilon)
    rng_regularizador = generador_derivado(config.semilla, 1)
    control = ControlParada(config.paciencia)
    historial = HistorialEntrenamiento(indices_validacion=indices_validacion)
    mejores = params
    temporizador = Temporizador()

    objetivo_acumulado, instancias_acumuladas = 0.0, 0
    epoca, posicion = 0, 0
    orden_epoca = indices_entrenamiento[generador_derivado(config.semilla, 2, epoca)
                                        .permutation(len(indices_entrenamiento))]

    # -------------------------------------------------------------------------
    # Bucle de actualizaciones
    # -------------------------------------------------------------------------
    for actualizacion in range(1, config.iteraciones_max + 1):
        if posicion >= len(orden_epoca):
            epoca += 1
            posicion = 0
            orden_epoca = indices_entrenamiento[generador_derivado(config.semilla, 2, epoca)
                                                .permutation(len(indices_entrenamiento))]
        lote = orden_epoca[posicion:posicion + config.tamano_lote]
        posicion += config.tamano_lote

        Xb = _filas_densas(X, lote)
        Yb = codificar_one_hot(clases[lote], m)

        if reg.tipo is TipoRegularizador.DROPOUT and reg.activo:
            traza = propagar_con_dropout(params, Xb, reg.tasa_dropout, rng_regularizador)
        else:
            traza = propagar(params, Xb)

        objetivo = perdida_entropia_cruzada(Yb, traza.salida)
        gradientes = gradientes_perdida(params, traza, Yb)
        if reg.activo and reg.tipo is not TipoRegularizador.DROPOUT:
            penalizacion, gradientes_reg = _gradiente_regularizador(
                config, params, Xb, traza, similitud, rng_regularizador)
            objetivo += reg.fuerza * penalizacion
            gradientes = gradientes + gradientes_reg.escalar(reg.fuerza)

        if not math.isfinite(objetivo):
            raise ErrorEntrenamiento(f"objetivo no finito en la actualizacion {actualizacion}")
        estado, params = paso_adam(estado, params, gradientes)
        objetivo_acumulado += objetivo
        instancias_acumuladas += len(lote)
        historial.actualizaciones = actualizacion

        if actualizacion % config.evaluar_cada == 0:
            error = error_clasificacion(predecir(params, X_validacion), y_validacion)
            historial.registrar(actualizacion, objetivo_acumulado / instancias_acumuladas, error)
            objetivo_acumulado, instancias_acumuladas = 0.0, 0
            detener = control.registrar(error)
            if control.mejora:
                mejores = params
                historial.indice_mejor = len(historial.indices) - 1
            if detener:
                historial.razon_parada = RAZON_PARADA_TEMPRANA
                break

    # Sin ninguna evaluacion, el ultimo estado es el unico punto de control
    if not historial.indices:
        error = error_clasificacion(predecir(params, X_validacion), y_validacion)
        historial.registrar(historial.actualizaciones,
                            objetivo_acumulado / max(1, instancias_acumuladas), error)
        historial.indice_mejor = 0
        mejores = params

    historial.segundos = temporizador.obtener_tiempo_transcurrido()
    logger.info("entrenamiento %s: %d actualizaciones en %s (%s), mejor error de validacion "
                "%.2f%% en la actualizacion %d", reg.tipo.value, historial.actualizaciones,
                formatear_tiempo(historial.segundos), historial.razon_parada,
                historial.mejor_error, historial.indices[historial.indice_mejor])
    return mejores, historial
