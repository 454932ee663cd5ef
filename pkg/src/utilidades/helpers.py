#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Funciones Auxiliares
=============================================================================

Descripcion:
    Herramientas reutilizables por el resto de paquetes: registro,
    escritura atomica de ficheros, derivacion de semillas, formateo de
    tiempos y primitivas de dibujo para las imagenes de curvas.

Funciones de registro y ficheros:
    - configurar_registro(): Instala el manejador de logging del proceso
    - escribir_atomico(): Escribe un fichero via temporal + renombrado
    - escribir_texto_atomico(): Atajo para contenido de texto

Funciones de aleatoriedad:
    - generador_derivado(): Generador numpy independiente por rama

Funciones de formateo:
    - formatear_tiempo(): Segundos -> Formato "mm:ss"

Funciones de renderizado:
    - obtener_fuente(): Fuente pygame cacheada
    - dibujar_texto(): Renderiza texto en una superficie
    - interpolar_color(): Mezcla dos colores RGB

Clases:
    - Temporizador: Cronometro de pared

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
import os
import tempfile
import time
from typing import IO, Callable, Dict, Tuple

import numpy as np

# Sin el saludo de pygame en la salida de la linea de comandos
os.environ.setdefault("PYGAME_HIDE_SUPPORT_PROMPT", "1")
import pygame  # noqa: E402


# =============================================================================
# REGISTRO (LOGGING)
# =============================================================================

FORMATO_REGISTRO = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configurar_registro(nivel: int = logging.INFO) -> None:
    """
    Configura el registro del proceso con un unico manejador a stderr.

    Se llama una sola vez desde la linea de comandos; las bibliotecas del
    proyecto solo obtienen su logger con logging.getLogger(__name__).

    Args:
        nivel: Nivel minimo de los mensajes (logging.INFO por defecto).
    """
    logging.basicConfig(level=nivel, format=FORMATO_REGISTRO, force=True)


# =============================================================================
# ESCRITURA ATOMICA
# =============================================================================

def escribir_atomico(ruta: str, escritor: Callable[[IO], None],
                     binario: bool = False) -> None:
    """
    Escribe un fichero de forma atomica.

    El contenido se vuelca primero a un temporal en el mismo directorio y
    despues se renombra sobre el destino con os.replace(), de modo que un
    lector concurrente nunca ve un fichero a medias.

    Args:
        ruta: Ruta final del fichero.
        escritor: Funcion que recibe el fichero abierto y escribe en el.
        binario: Abrir el temporal en modo binario.

    Example:
        >>> escribir_atomico("h.csv", lambda f: f.write("a,b\\n"))
    """
    directorio = os.path.dirname(os.path.abspath(ruta))
    os.makedirs(directorio, exist_ok=True)

    modo = "wb" if binario else "w"
    descriptor, temporal = tempfile.mkstemp(dir=directorio, prefix=".tmp-")
    try:
        with os.fdopen(descriptor, modo, encoding=None if binario else "utf-8") as fichero:
            escritor(fichero)
        os.replace(temporal, ruta)
    except BaseException:
        # El temporal no debe quedar huerfano
        if os.path.exists(temporal):
            os.remove(temporal)
        raise


def escribir_texto_atomico(ruta: str, texto: str) -> None:
    """Escribe `texto` en `ruta` de forma atomica."""
    escribir_atomico(ruta, lambda fichero: fichero.write(texto))


# =============================================================================
# ALEATORIEDAD
# =============================================================================

def generador_derivado(semilla: int, *ramas: int) -> np.random.Generator:
    """
    Crea un generador numpy independiente para una rama del experimento.

    La semilla maestra y los identificadores de rama forman la entropia
    de un SeedSequence, asi cada flujo (inicializacion, regularizador,
    barajado de cada epoca, candidato de la rejilla) es reproducible sin
    depender del orden en que los demas consumen numeros.

    Args:
        semilla: Semilla maestra del experimento.
        *ramas: Enteros no negativos que identifican el flujo.

    Returns:
        np.random.Generator listo para usar.

    Example:
        >>> rng = generador_derivado(7, 2, 0)   # barajado de la epoca 0
    """
    if not ramas:
        return np.random.default_rng(semilla)
    return np.random.default_rng([semilla, *ramas])


def semilla_derivada(semilla: int, *ramas: int) -> int:
    """Entero de 32 bits derivado de la semilla maestra y las ramas."""
    return int(np.random.SeedSequence([semilla, *ramas]).generate_state(1)[0])


# =============================================================================
# FUNCIONES DE FORMATEO
# =============================================================================

def formatear_tiempo(segundos: float) -> str:
    """
    Formatea una duracion en segundos como "mm:ss".

    Las fracciones de segundo se truncan.

    Example:
        >>> formatear_tiempo(125.7)
        '02:05'
    """
    segundos = int(segundos)
    minutos = segundos // 60
    segundos_restantes = segundos % 60
    return f"{minutos:02d}:{segundos_restantes:02d}"


# =============================================================================
# FUNCIONES DE RENDERIZADO
# =============================================================================
# Clave: tamano de fuente; valor: pygame.font.Font ya creada.

_cache_fuentes: Dict[int, pygame.font.Font] = {}


def obtener_fuente(tamano: int) -> pygame.font.Font:
    """
    Devuelve la fuente por defecto de pygame del tamano pedido, cacheada.

    Inicializa el modulo de fuentes si todavia no lo esta, porque las
    curvas se dibujan sin ventana y sin pygame.init().
    """
    if not pygame.font.get_init():
        pygame.font.init()
    if tamano not in _cache_fuentes:
        _cache_fuentes[tamano] = pygame.font.Font(None, tamano)
    return _cache_fuentes[tamano]


def dibujar_texto(superficie: pygame.Surface, texto: str, tamano: int,
                  x: int, y: int, color: Tuple[int, int, int],
                  centrado: bool = True) -> None:
    """
    Dibuja texto en una superficie de pygame.

    Args:
        superficie: Superficie destino.
        texto: Texto a dibujar.
        tamano: Tamano de la fuente en puntos.
        x: Coordenada x.
        y: Coordenada y.
        color: Color RGB.
        centrado: Si es True (x, y) es el centro; si no, la esquina
                  superior izquierda.
    """
    superficie_texto = obtener_fuente(tamano).render(texto, True, color)
    rect_texto = superficie_texto.get_rect()
    if centrado:
        rect_texto.center = (x, y)
    else:
        rect_texto.topleft = (x, y)
    superficie.blit(superficie_texto, rect_texto)


def interpolar_color(color1: Tuple[int, int, int],
                     color2: Tuple[int, int, int],
                     factor: float) -> Tuple[int, int, int]:
    """
    Interpola linealmente entre dos colores RGB.

    Example:
        >>> interpolar_color((255, 0, 0), (0, 255, 0), 0.5)
        (127, 127, 0)
    """
    return tuple(int(a + (b - a) * factor) for a, b in zip(color1, color2))


# =============================================================================
# CLASE TEMPORIZADOR
# =============================================================================

class Temporizador:
    """
    Cronometro de pared para medir la duracion de un entrenamiento.

    Mide con time.perf_counter(), que es monotono.

    Example:
        >>> reloj = Temporizador()
        >>> reloj.obtener_tiempo_transcurrido()
    """

    def __init__(self):
        self.tiempo_inicio = time.perf_counter()

    def obtener_tiempo_transcurrido(self) -> float:
        """Segundos desde el inicio (con fraccion)."""
        return time.perf_counter() - self.tiempo_inicio
