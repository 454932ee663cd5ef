#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Red Neuronal
=============================================================================

Descripcion:
    Perceptron multicapa con activacion sigmoide en todas las capas
    (incluida la salida). Todo se calcula por lotes: la primera dimension
    de cada array es la instancia.

Notacion (indices desde 0):
    - W[k], b[k]: pesos (h_{k+1} x h_k) y sesgos de la capa k, k = 0..K
    - a[k]: preactivacion de la capa k; z[0] = x, z[k+1] = h(a[k])
    - delta[k] (n, h_{k+1}, m): ∂φ_j / ∂a[k]_l
    - G[k] (n, h_{k+1}, h_1): ∂a[k]_l / ∂a[0]_g, con G[0] = I
    - B[k] (n, h_{k+1}, m, h_1): ∂delta[k]_lj / ∂a[0]_g

    Las derivadas de la activacion se obtienen de las activaciones
    guardadas: h' = z(1 - z), h'' = z(1 - z)(1 - 2z).

Funciones principales:
    - inicializar_glorot(): Pesos uniformes de Glorot, sesgos a cero
    - propagar(): Pasada hacia delante con mascaras opcionales
    - tensores_sensibilidad(): Recursiones de delta, G y B
    - jacobiano(): J(x) = delta[0]ᵀ W[0], de forma (n, m, d)
    - perdida_entropia_cruzada() / gradientes_perdida()
    - retropropagar(): Retropropagacion estandar desde una semilla ∂E/∂φ
    - predecir(): Clase de mayor salida
    - guardar_modelo() / cargar_modelo(): Contenedor .npz versionado

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

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.special import expit

from utilidades.errores import ErrorConfiguracion, ErrorDatos, ErrorForma
from utilidades.helpers import escribir_atomico, generador_derivado


# =============================================================================
# ACTIVACIONES
# =============================================================================
# Cada activacion guarda la funcion y sus dos primeras derivadas expresadas
# en terminos de la salida z = h(a).

@dataclass(frozen=True)
class Activacion:
    """Funcion de activacion y derivadas en funcion de la salida z."""
    funcion: Callable[[np.ndarray], np.ndarray]
    primera: Callable[[np.ndarray], np.ndarray]
    segunda: Callable[[np.ndarray], np.ndarray]


ACTIVACIONES: Dict[str, Activacion] = {
    "sigmoide": Activacion(
        funcion=expit,
        primera=lambda z: z * (1.0 - z),
        segunda=lambda z: z * (1.0 - z) * (1.0 - 2.0 * z),
    ),
    # Solo para pruebas: reduce la red de una capa al modelo lineal
    "identidad": Activacion(
        funcion=lambda a: a.copy(),
        primera=np.ones_like,
        segunda=np.zeros_like,
    ),
}

LIMITE_PROBABILIDAD = 1e-12   # Recorte de φ antes del logaritmo
VERSION_FORMATO_MODELO = 1


# =============================================================================
# TIPOS DE DOMINIO
# =============================================================================

@dataclass
class ParametrosRed:
    """
    Pesos y sesgos de la red.

    Attributes:
        pesos (List[np.ndarray]): W[k] de forma (h_{k+1}, h_k).
        sesgos (List[np.ndarray]): b[k] de forma (h_{k+1},).
        activacion (str): Clave de ACTIVACIONES.
    """
    pesos: List[np.ndarray]
    sesgos: List[np.ndarray]
    activacion: str = "sigmoide"

    def __post_init__(self):
        if len(self.pesos) == 0 or len(self.pesos) != len(self.sesgos):
            raise ErrorForma("se necesita el mismo numero (>= 1) de matrices de pesos y de sesgos")
        if self.activacion not in ACTIVACIONES:
            raise ErrorConfiguracion(f"activacion desconocida '{self.activacion}'")
        self.pesos = [np.asarray(w, dtype=np.float64) for w in self.pesos]
        self.sesgos = [np.asarray(b, dtype=np.float64) for b in self.sesgos]
        for k, (w, b) in enumerate(zip(self.pesos, self.sesgos)):
            if w.ndim != 2 or b.shape != (w.shape[0],):
                raise ErrorForma(f"capa {k}: W {w.shape} y b {b.shape} no encajan")
            if k > 0 and w.shape[1] != self.pesos[k - 1].shape[0]:
                raise ErrorForma(f"capa {k}: entrada {w.shape[1]} != salida anterior "
                                 f"{self.pesos[k - 1].shape[0]}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ErrorDatos(f"capa {k}: parametros no finitos")

    @property
    def dims(self) -> List[int]:
        """[d, h_1, ..., m]."""
        return [self.pesos[0].shape[1]] + [w.shape[0] for w in self.pesos]

    @property
    def numero_capas(self) -> int:
        return len(self.pesos)

    @property
    def funcion_activacion(self) -> Activacion:
        return ACTIVACIONES[self.activacion]

    def copiar(self) -> "ParametrosRed":
        return ParametrosRed([w.copy() for w in self.pesos],
                             [b.copy() for b in self.sesgos], self.activacion)

    def aplanar(self) -> np.ndarray:
        """Todos los parametros en un vector (W[0], b[0], W[1], ...)."""
        partes = []
        for w, b in zip(self.pesos, self.sesgos):
            partes.extend((w.ravel(), b))
        return np.concatenate(partes)

    def con_vector(self, vector: np.ndarray) -> "ParametrosRed":
        """Nueva instancia con los valores de `vector` (inversa de aplanar)."""
        pesos, sesgos, inicio = [], [], 0
        for w, b in zip(self.pesos, self.sesgos):
            pesos.append(vector[inicio:inicio + w.size].reshape(w.shape).copy())
            inicio += w.size
            sesgos.append(vector[inicio:inicio + b.size].copy())
            inicio += b.size
        return ParametrosRed(pesos, sesgos, self.activacion)


@dataclass
class Gradientes:
    """Gradientes con la misma estructura que ParametrosRed."""
    pesos: List[np.ndarray]
    sesgos: List[np.ndarray]

    @classmethod
    def ceros(cls, params: ParametrosRed) -> "Gradientes":
        return cls([np.zeros_like(w) for w in params.pesos],
                   [np.zeros_like(b) for b in params.sesgos])

    def __add__(self, otro: "Gradientes") -> "Gradientes":
        return Gradientes([a + b for a, b in zip(self.pesos, otro.pesos)],
                          [a + b for a, b in zip(self.sesgos, otro.sesgos)])

    def escalar(self, factor: float) -> "Gradientes":
        return Gradientes([factor * w for w in self.pesos], [factor * b for b in self.sesgos])

    def es_finito(self) -> bool:
        return all(np.all(np.isfinite(g)) for g in self.pesos + self.sesgos)

    def aplanar(self) -> np.ndarray:
        partes = []
        for w, b in zip(self.pesos, self.sesgos):
            partes.extend((w.ravel(), b))
        return np.concatenate(partes)


@dataclass
class Traza:
    """
    Resultado de una pasada hacia delante.

    Attributes:
        preactivaciones (List[np.ndarray]): a[k], forma (n, h_{k+1}).
        activaciones (List[np.ndarray]): z[0] = x, z[k+1] = h(a[k]), sin mascara.
        mascaras (List[Optional[np.ndarray]]): Para cada capa oculta k+1
            (k = 0..K-1) la mascara ya escalada por 1/(1 - tasa), o None.
    """
    preactivaciones: List[np.ndarray]
    activaciones: List[np.ndarray]
    mascaras: List[Optional[np.ndarray]] = field(default_factory=list)

    @property
    def salida(self) -> np.ndarray:
        """φ(x), forma (n, m)."""
        return self.activaciones[-1]

    def mascara(self, k: int) -> Optional[np.ndarray]:
        """Mascara aplicada a z[k] (k >= 1), o None."""
        if 1 <= k <= len(self.mascaras):
            return self.mascaras[k - 1]
        return None

    def entrada_capa(self, k: int) -> np.ndarray:
        """Entrada efectiva de la capa k: z[k] con su mascara si la hay."""
        mascara = self.mascara(k)
        z = self.activaciones[k]
        return z if mascara is None else z * mascara


@dataclass
class TensoresSensibilidad:
    """
    Tensores de las recursiones de retropropagacion modificada.

    Attributes:
        delta (List[np.ndarray]): delta[k] de forma (n, h_{k+1}, m).
        G (List[np.ndarray]): G[k] de forma (n, h_{k+1}, h_1).
        B (Optional[List[np.ndarray]]): B[k] de forma (n, h_{k+1}, m, h_1).
        primeras (List[np.ndarray]): h'(a[k]).
        segundas (List[np.ndarray]): h''(a[k]).
    """
    delta: List[np.ndarray]
    G: List[np.ndarray]
    B: Optional[List[np.ndarray]]
    primeras: List[np.ndarray]
    segundas: List[np.ndarray]


# =============================================================================
# INICIALIZACION
# =============================================================================

def inicializar_glorot(dims: Sequence[int], semilla: int,
                       activacion: str = "sigmoide") -> ParametrosRed:
    """
    Inicializacion uniforme de Glorot.

    W[k] ~ U(-r, r) con r = sqrt(6 / (h_k + h_{k+1})); b[k] = 0.

    Args:
        dims: [d, h_1, ..., m].
        semilla: Semilla del generador.
        activacion: Clave de ACTIVACIONES.

    Raises:
        ErrorConfiguracion: Si hay menos de dos dimensiones o alguna < 1.

    Example:
        >>> params = inicializar_glorot([4, 3, 2], semilla=0)
        >>> bool(np.all(np.abs(params.pesos[0]) <= np.sqrt(6 / 7)))
        True
    """
    dims = [int(h) for h in dims]
    if len(dims) < 2 or min(dims) < 1:
        raise ErrorConfiguracion(f"dimensiones de red invalidas: {dims}")

    rng = generador_derivado(semilla)
    pesos, sesgos = [], []
    for entrada, salida in zip(dims[:-1], dims[1:]):
        radio = np.sqrt(6.0 / (entrada + salida))
        pesos.append(rng.uniform(-radio, radio, size=(salida, entrada)))
        sesgos.append(np.zeros(salida))
    return ParametrosRed(pesos, sesgos, activacion)


# =============================================================================
# PASADA HACIA DELANTE
# =============================================================================

def _como_lote(params: ParametrosRed, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != params.dims[0]:
        raise ErrorForma(f"entrada de forma {x.shape}, la red espera {params.dims[0]} caracteristicas")
    if not np.all(np.isfinite(x)):
        raise ErrorDatos("la entrada contiene valores no finitos")
    return x


def propagar(params: ParametrosRed, x: np.ndarray,
             mascaras: Optional[List[Optional[np.ndarray]]] = None) -> Traza:
    """
    Pasada hacia delante.

    Args:
        params: Parametros de la red.
        x: Instancia (d,) o lote (n, d).
        mascaras: Una mascara escalada (o None) por capa oculta.

    Returns:
        Traza con a[k], z[k] y las mascaras usadas.

    Raises:
        ErrorForma: Si x no tiene d columnas.

    Example:
        >>> params = ParametrosRed([np.array([[2.0]])], [np.array([-1.0])])
        >>> float(propagar(params, np.array([1.0])).salida[0, 0])   # sigmoide(1)
        0.7310585786300049
    """
    x = _como_lote(params, x)
    primera = x @ params.pesos[0].T + params.sesgos[0]
    return propagar_desde_preactivacion(params, primera, x, mascaras)


def propagar_desde_preactivacion(params: ParametrosRed, preactivacion: np.ndarray,
                                 x: np.ndarray,
                                 mascaras: Optional[List[Optional[np.ndarray]]] = None
                                 ) -> Traza:
    """
    Completa la pasada hacia delante a partir de a[0].

    Permite perturbar la preactivacion de la primera capa directamente,
    como necesitan las comprobaciones de G y B por diferencias finitas.
    """
    activacion = params.funcion_activacion
    numero = params.numero_capas
    if mascaras is None:
        mascaras = [None] * (numero - 1)

    preactivaciones = [np.asarray(preactivacion, dtype=np.float64)]
    activaciones = [x, activacion.funcion(preactivaciones[0])]
    for k in range(1, numero):
        z = activaciones[k]
        if mascaras[k - 1] is not None:
            z = z * mascaras[k - 1]
        preactivaciones.append(z @ params.pesos[k].T + params.sesgos[k])
        activaciones.append(activacion.funcion(preactivaciones[k]))
    return Traza(preactivaciones, activaciones, list(mascaras))


def predecir(params: ParametrosRed, x, tamano_bloque: int = 1024) -> np.ndarray:
    """
    Indice (desde 0) de la salida maxima de cada instancia; empate al menor.

    Acepta matrices dispersas, que se densifican por bloques de filas.
    """
    if not sp.issparse(x):
        return np.argmax(propagar(params, x).salida, axis=1)
    x = x.tocsr()
    bloques = [np.argmax(propagar(params, x[inicio:inicio + tamano_bloque].toarray()).salida, axis=1)
               for inicio in range(0, x.shape[0], tamano_bloque)]
    return np.concatenate(bloques) if bloques else np.zeros(0, dtype=np.int64)


# =============================================================================
# TENSORES DE SENSIBILIDAD
# =============================================================================

def _derivadas(params: ParametrosRed, traza: Traza) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    activacion = params.funcion_activacion
    salidas = traza.activaciones[1:]
    return ([activacion.primera(z) for z in salidas],
            [activacion.segunda(z) for z in salidas])


def tensores_sensibilidad(params: ParametrosRed, traza: Traza,
                          calcular_b: bool = True) -> TensoresSensibilidad:
    """
    Calcula delta, G y (opcionalmente) B por sus recursiones.

    Recursiones, con K la ultima capa:
        delta[K] = diag(h'(a[K]))
        delta[k] = (W[k+1]ᵀ delta[k+1]) ⊙ h'(a[k])
        G[0] = I,  G[k] = W[k] (G[k-1] ⊙ h'(a[k-1]))
        B[K]_ljg = h''(a[K])_l 1_lj G[K]_lg
        B[k]_ljg = h''(a[k])_l G[k]_lg (W[k+1]ᵀ delta[k+1])_lj
                   + h'(a[k])_l Σ_p W[k+1]_pl B[k+1]_pjg

    Las mascaras de dropout no intervienen: los tensores describen la red
    sin descarte.

    Args:
        params: Parametros de la red.
        traza: Traza de propagar() con esos parametros.
        calcular_b: B ocupa n·h·m·h_1 por capa; el gradiente analitico no
                    lo necesita materializado.

    Returns:
        TensoresSensibilidad.
    """
    primeras, segundas = _derivadas(params, traza)
    pesos = params.pesos
    ultima = params.numero_capas - 1
    n = traza.activaciones[0].shape[0]
    m = pesos[-1].shape[0]
    h1 = pesos[0].shape[0]

    # -------------------------------------------------------------------------
    # delta, de la salida hacia la entrada
    # -------------------------------------------------------------------------
    delta: List[np.ndarray] = [None] * (ultima + 1)
    delta[ultima] = np.einsum("nl,lj->nlj", primeras[ultima], np.eye(m))
    retro: List[Optional[np.ndarray]] = [None] * (ultima + 1)   # W[k+1]ᵀ delta[k+1]
    for k in range(ultima - 1, -1, -1):
        retro[k] = np.einsum("pl,npj->nlj", pesos[k + 1], delta[k + 1])
        delta[k] = retro[k] * primeras[k][:, :, None]

    # -------------------------------------------------------------------------
    # G, de la primera capa hacia la salida
    # -------------------------------------------------------------------------
    G = [np.broadcast_to(np.eye(h1), (n, h1, h1)).copy()]
    for k in range(1, ultima + 1):
        G.append(np.einsum("ml,nlg->nmg", pesos[k], G[k - 1] * primeras[k - 1][:, :, None]))

    # -------------------------------------------------------------------------
    # B, de la salida hacia la entrada
    # -------------------------------------------------------------------------
    B = None
    if calcular_b:
        B = [None] * (ultima + 1)
        B[ultima] = np.einsum("nl,lj,nlg->nljg", segundas[ultima], np.eye(m), G[ultima])
        for k in range(ultima - 1, -1, -1):
            B[k] = (segundas[k][:, :, None, None] * G[k][:, :, None, :] * retro[k][:, :, :, None]
                    + primeras[k][:, :, None, None]
                    * np.einsum("pl,npjg->nljg", pesos[k + 1], B[k + 1]))

    return TensoresSensibilidad(delta, G, B, primeras, segundas)


def contraer_b(params: ParametrosRed, tensores: TensoresSensibilidad,
               Q: np.ndarray) -> List[np.ndarray]:
    """
    T[k]_l = Σ_jg B[k]_ljg Q_gj sin materializar B.

    Usa la misma recursion que B contraida con Q (n, h_1, m):
        T[K] = h''(a[K]) ⊙ diag(G[K] Q)
        T[k] = h''(a[k]) ⊙ rowsum((G[k] Q) ⊙ W[k+1]ᵀ delta[k+1])
               + h'(a[k]) ⊙ W[k+1]ᵀ T[k+1]
    """
    pesos = params.pesos
    ultima = params.numero_capas - 1
    T: List[np.ndarray] = [None] * (ultima + 1)

    GQ = np.matmul(tensores.G[ultima], Q)
    T[ultima] = tensores.segundas[ultima] * np.einsum("nll->nl", GQ)
    for k in range(ultima - 1, -1, -1):
        retro = np.einsum("pl,npj->nlj", pesos[k + 1], tensores.delta[k + 1])
        GQ = np.matmul(tensores.G[k], Q)
        T[k] = (tensores.segundas[k] * np.sum(GQ * retro, axis=2)
                + tensores.primeras[k] * (T[k + 1] @ pesos[k + 1]))
    return T


def jacobiano(params: ParametrosRed, traza: Traza,
              tensores: Optional[TensoresSensibilidad] = None) -> np.ndarray:
    """
    Jacobiano del modelo, J(x) = delta[0]ᵀ W[0], de forma (n, m, d).

    Example:
        >>> # Red lineal de una capa: J = W
        >>> params = ParametrosRed([np.eye(2)], [np.zeros(2)], "identidad")
        >>> jacobiano(params, propagar(params, np.ones(2)))[0]
        array([[1., 0.],
               [0., 1.]])
    """
    if tensores is None:
        tensores = tensores_sensibilidad(params, traza, calcular_b=False)
    return np.einsum("nhm,hd->nmd", tensores.delta[0], params.pesos[0])


# =============================================================================
# PERDIDA Y RETROPROPAGACION
# =============================================================================

def codificar_one_hot(clases: np.ndarray, m: int) -> np.ndarray:
    """Clases desde 0 -> matriz (n, m) de ceros y unos."""
    clases = np.asarray(clases, dtype=np.int64)
    if clases.size and (clases.min() < 0 or clases.max() >= m):
        raise ErrorDatos(f"clases fuera de [0, {m})")
    salida = np.zeros((len(clases), m))
    salida[np.arange(len(clases)), clases] = 1.0
    return salida


def _validar_one_hot(y: np.ndarray) -> np.ndarray:
    y = np.atleast_2d(np.asarray(y, dtype=np.float64))
    if not np.all((y == 0.0) | (y == 1.0)):
        raise ErrorDatos("los objetivos deben ser 0 o 1")
    if y.shape[1] > 1 and not np.all(y.sum(axis=1) == 1.0):
        raise ErrorDatos("cada objetivo debe tener exactamente un 1 (one-hot)")
    return y


def _recortar(phi: np.ndarray) -> np.ndarray:
    return np.clip(phi, LIMITE_PROBABILIDAD, 1.0 - LIMITE_PROBABILIDAD)


def perdida_entropia_cruzada(y: np.ndarray, phi: np.ndarray) -> float:
    """
    Entropia cruzada sumada sobre el lote y las salidas.

    E = -Σ [y log φ + (1 - y) log(1 - φ)], con φ recortada a
    [1e-12, 1 - 1e-12].

    Raises:
        ErrorDatos: Si y no es one-hot.

    Example:
        >>> round(perdida_entropia_cruzada(np.array([1.0]), np.array([0.5])), 6)
        0.693147
    """
    y = _validar_one_hot(y)
    phi = _recortar(np.atleast_2d(np.asarray(phi, dtype=np.float64)))
    if phi.shape != y.shape:
        raise ErrorForma(f"φ {phi.shape} e y {y.shape} no coinciden")
    return float(-np.sum(y * np.log(phi) + (1.0 - y) * np.log(1.0 - phi)))


def retropropagar(params: ParametrosRed, traza: Traza, semilla: np.ndarray) -> Gradientes:
    """
    Retropropagacion estandar a partir de ∂E/∂φ.

    Respeta las mascaras de la traza: ∂E/∂a[k-1] = (W[k]ᵀ g) ⊙ mascara ⊙ h'.
    Los gradientes se suman sobre el lote.

    Args:
        params: Parametros de la red.
        traza: Traza de la pasada que se deriva.
        semilla: ∂E/∂φ, forma (n, m).
    """
    primeras, _ = _derivadas(params, traza)
    ultima = params.numero_capas - 1
    pesos: List[np.ndarray] = [None] * (ultima + 1)
    sesgos: List[np.ndarray] = [None] * (ultima + 1)

    g = semilla * primeras[ultima]
    for k in range(ultima, -1, -1):
        pesos[k] = g.T @ traza.entrada_capa(k)
        sesgos[k] = g.sum(axis=0)
        if k > 0:
            g = g @ params.pesos[k]
            mascara = traza.mascara(k)
            if mascara is not None:
                g = g * mascara
            g = g * primeras[k - 1]
    return Gradientes(pesos, sesgos)


def gradientes_perdida(params: ParametrosRed, traza: Traza, y: np.ndarray) -> Gradientes:
    """
    Gradientes de la entropia cruzada respecto a W[k] y b[k].

    La semilla es ∂E/∂φ = (φ - y) / (φ (1 - φ)) con φ recortada.
    """
    y = _validar_one_hot(y)
    phi = _recortar(traza.salida)
    semilla = (phi - y) / (phi * (1.0 - phi))
    return retropropagar(params, traza, semilla)


# =============================================================================
# PERSISTENCIA
# =============================================================================
# Contenedor .npz: formato_version, dims, semilla, activacion y los arrays
# W0, b0, W1, b1, ... en orden C (fila a fila).

def guardar_modelo(params: ParametrosRed, ruta: str, semilla: int) -> None:
    """Guarda los parametros en un .npz versionado (escritura atomica)."""
    arrays = {
        "formato_version": np.array(VERSION_FORMATO_MODELO),
        "dims": np.array(params.dims, dtype=np.int64),
        "semilla": np.array(semilla, dtype=np.int64),
        "activacion": np.array(params.activacion),
    }
    for k, (w, b) in enumerate(zip(params.pesos, params.sesgos)):
        arrays[f"W{k}"] = np.ascontiguousarray(w)
        arrays[f"b{k}"] = b
    escribir_atomico(ruta, lambda fichero: np.savez(fichero, **arrays), binario=True)


def cargar_modelo(ruta: str) -> Tuple[ParametrosRed, int]:
    """
    Carga un modelo guardado con guardar_modelo().

    Returns:
        Tupla (parametros, semilla).

    Raises:
        ErrorDatos: Version desconocida o cadena de formas incoherente.
    """
    with np.load(ruta, allow_pickle=False) as contenido:
        version = int(contenido["formato_version"])
        if version != VERSION_FORMATO_MODELO:
            raise ErrorDatos(f"{ruta}: version de formato {version} no soportada")
        dims = [int(h) for h in contenido["dims"]]
        pesos = [contenido[f"W{k}"] for k in range(len(dims) - 1)]
        sesgos = [contenido[f"b{k}"] for k in range(len(dims) - 1)]
        params = ParametrosRed(pesos, sesgos, str(contenido["activacion"]))
        semilla = int(contenido["semilla"])
    if params.dims != dims:
        raise ErrorDatos(f"{ruta}: las formas guardadas no coinciden con dims {dims}")
    return params, semilla
