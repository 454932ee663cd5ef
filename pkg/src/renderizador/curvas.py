#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Curvas de Aprendizaje
=============================================================================

Descripcion:
    Dibuja el error de validacion frente al numero de actualizacion para
    uno o varios historiales y guarda la imagen como PNG. Se dibuja sobre
    una superficie de pygame fuera de pantalla: no se abre ninguna
    ventana.

Elementos de la imagen:
    - Ejes con marcas y rejilla suave
    - Una linea por historial, con color y trazo propios de cada
      regularizador; varios historiales del mismo
      regularizador (p. ej. un pliegue cada uno) se aclaran en degradado
    - Un circulo en el mejor punto de control de cada historial
    - Leyenda con el nombre de cada regularizador

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import pygame

from configuracion.config import (
    TipoRegularizador, ANCHO_IMAGEN, ALTO_IMAGEN, MARGEN_IMAGEN,
    BLANCO, NEGRO, GRIS, COLORES_CURVAS, PATRONES_LINEA, TAMANO_FUENTE_PEQUENA,
    TAMANO_FUENTE_MEDIANA
)
from entrenamiento.entrenador import HistorialEntrenamiento
from utilidades.errores import ErrorDatos
from utilidades.helpers import dibujar_texto, escribir_atomico, interpolar_color

MARCAS_EJE = 5          # Divisiones de cada eje
RADIO_MEJOR = 4         # Pixeles
GROSOR_LINEA = 2
LARGO_LEYENDA = 40      # Pixeles de la muestra de trazo


@dataclass
class Curva:
    """Serie de un historial lista para dibujar."""
    nombre: str
    indices: List[int]
    errores: List[float]
    indice_mejor: int
    color: Tuple[int, int, int]
    patron: Tuple[int, ...] = ()


def color_regularizador(nombre: str) -> Tuple[int, int, int]:
    """Color de la paleta para un nombre de columna (negro si no se conoce)."""
    try:
        # "L2#2" usa el color de L2
        return COLORES_CURVAS[TipoRegularizador.desde_texto(nombre.split("#")[0])]
    except ValueError:
        return NEGRO


def patron_regularizador(nombre: str) -> Tuple[int, ...]:
    """Trazo de la paleta para un nombre de columna (continuo si no se conoce)."""
    try:
        return PATRONES_LINEA[TipoRegularizador.desde_texto(nombre.split("#")[0])]
    except ValueError:
        return ()


def dibujar_trazo(superficie: pygame.Surface, color: Tuple[int, int, int],
                  puntos: Sequence[Tuple[float, float]], patron: Sequence[int] = (),
                  grosor: int = GROSOR_LINEA) -> None:
    """
    Dibuja una poligonal continua o discontinua.

    El patron alterna longitudes dibujadas y huecos en pixeles, y su fase
    continua de un segmento al siguiente.
    """
    if len(puntos) < 2:
        return
    if not patron:
        pygame.draw.lines(superficie, color, False, puntos, grosor)
        return

    tramo, restante = 0, float(patron[0])
    for (x0, y0), (x1, y1) in zip(puntos, puntos[1:]):
        longitud = math.hypot(x1 - x0, y1 - y0)
        recorrido = 0.0
        while recorrido < longitud:
            avance = min(restante, longitud - recorrido)
            if tramo % 2 == 0:
                inicio, fin = recorrido / longitud, (recorrido + avance) / longitud
                pygame.draw.line(superficie, color,
                                 (x0 + (x1 - x0) * inicio, y0 + (y1 - y0) * inicio),
                                 (x0 + (x1 - x0) * fin, y0 + (y1 - y0) * fin), grosor)
            recorrido += avance
            restante -= avance
            if restante <= 0:
                tramo = (tramo + 1) % len(patron)
                restante = float(patron[tramo])


class GraficoCurvas:
    """
    Grafico de curvas de aprendizaje.

    Example:
        >>> grafico = GraficoCurvas(titulo="A1")
        >>> grafico.agregar("ST", historial)
        >>> grafico.guardar("curvas.png")
    """

    def __init__(self, ancho: int = ANCHO_IMAGEN, alto: int = ALTO_IMAGEN,
                 titulo: str = ""):
        self.ancho = ancho
        self.alto = alto
        self.titulo = titulo
        self.grupos: Dict[str, List[HistorialEntrenamiento]] = {}

    def agregar(self, nombre: str, historial: HistorialEntrenamiento) -> None:
        """Anade un historial; los del mismo nombre se dibujan juntos."""
        if not historial.indices:
            raise ErrorDatos(f"el historial de {nombre} no tiene evaluaciones")
        self.grupos.setdefault(nombre, []).append(historial)

    def curvas(self) -> List[Curva]:
        """Series con su color y trazo finales, en orden de insercion."""
        curvas = []
        for nombre, historiales in self.grupos.items():
            base = color_regularizador(nombre)
            patron = patron_regularizador(nombre)
            for i, historial in enumerate(historiales):
                # Cada pliegue adicional se acerca un poco mas al fondo
                color = interpolar_color(base, BLANCO, 0.6 * i / len(historiales))
                curvas.append(Curva(nombre, list(historial.indices),
                                    list(historial.errores_validacion),
                                    historial.indice_mejor, color, patron))
        return curvas

    # -------------------------------------------------------------------------
    # Geometria
    # -------------------------------------------------------------------------

    def _limites(self, curvas: Sequence[Curva]) -> Tuple[float, float]:
        x_max = max(max(c.indices) for c in curvas) if curvas else 1
        y_max = max(max(c.errores) for c in curvas) if curvas else 100.0
        # Eje de error redondeado a la decena superior
        y_max = max(10.0, 10.0 * math.ceil(y_max / 10.0))
        return float(max(1, x_max)), y_max

    def _a_pixel(self, x: float, y: float, x_max: float, y_max: float) -> Tuple[int, int]:
        ancho_util = self.ancho - 2 * MARGEN_IMAGEN
        alto_util = self.alto - 2 * MARGEN_IMAGEN
        px = MARGEN_IMAGEN + int(round(ancho_util * x / x_max))
        py = self.alto - MARGEN_IMAGEN - int(round(alto_util * y / y_max))
        return px, py

    # -------------------------------------------------------------------------
    # Dibujo
    # -------------------------------------------------------------------------

    def dibujar(self, superficie: pygame.Surface) -> None:
        superficie.fill(BLANCO)
        curvas = self.curvas()
        x_max, y_max = self._limites(curvas)
        self._dibujar_ejes(superficie, x_max, y_max)

        for curva in curvas:
            puntos = [self._a_pixel(x, y, x_max, y_max)
                      for x, y in zip(curva.indices, curva.errores)]
            dibujar_trazo(superficie, curva.color, puntos, curva.patron)
            if 0 <= curva.indice_mejor < len(puntos):
                pygame.draw.circle(superficie, curva.color, puntos[curva.indice_mejor], RADIO_MEJOR)

        self._dibujar_leyenda(superficie)
        if self.titulo:
            dibujar_texto(superficie, self.titulo, TAMANO_FUENTE_MEDIANA,
                          self.ancho // 2, MARGEN_IMAGEN // 2, NEGRO)

    def _dibujar_ejes(self, superficie: pygame.Surface, x_max: float, y_max: float) -> None:
        origen = self._a_pixel(0, 0, x_max, y_max)
        extremo_x = self._a_pixel(x_max, 0, x_max, y_max)
        extremo_y = self._a_pixel(0, y_max, x_max, y_max)
        rejilla = interpolar_color(GRIS, BLANCO, 0.5)

        for paso in range(MARCAS_EJE + 1):
            fraccion = paso / MARCAS_EJE
            x_valor, y_valor = fraccion * x_max, fraccion * y_max
            px, _ = self._a_pixel(x_valor, 0, x_max, y_max)
            _, py = self._a_pixel(0, y_valor, x_max, y_max)
            if paso:
                pygame.draw.line(superficie, rejilla, (px, extremo_y[1]), (px, origen[1]))
                pygame.draw.line(superficie, rejilla, (origen[0], py), (extremo_x[0], py))
            dibujar_texto(superficie, f"{int(round(x_valor))}", TAMANO_FUENTE_PEQUENA,
                          px, origen[1] + 12, NEGRO)
            dibujar_texto(superficie, f"{y_valor:.0f}", TAMANO_FUENTE_PEQUENA,
                          origen[0] - 20, py, NEGRO)

        pygame.draw.line(superficie, NEGRO, origen, extremo_x, GROSOR_LINEA)
        pygame.draw.line(superficie, NEGRO, origen, extremo_y, GROSOR_LINEA)
        dibujar_texto(superficie, "actualizacion", TAMANO_FUENTE_MEDIANA,
                      self.ancho // 2, self.alto - MARGEN_IMAGEN // 3, NEGRO)
        dibujar_texto(superficie, "error %", TAMANO_FUENTE_MEDIANA,
                      MARGEN_IMAGEN // 2, MARGEN_IMAGEN // 2, NEGRO)

    def _dibujar_leyenda(self, superficie: pygame.Surface) -> None:
        x = self.ancho - MARGEN_IMAGEN - 140
        y = MARGEN_IMAGEN + 10
        for nombre in self.grupos:
            color = color_regularizador(nombre)
            dibujar_trazo(superficie, color, [(x, y), (x + LARGO_LEYENDA, y)],
                          patron_regularizador(nombre), GROSOR_LINEA + 1)
            dibujar_texto(superficie, nombre, TAMANO_FUENTE_MEDIANA, x + LARGO_LEYENDA + 10, y - 8,
                          NEGRO, centrado=False)
            y += 24

    def renderizar(self) -> pygame.Surface:
        superficie = pygame.Surface((self.ancho, self.alto))
        self.dibujar(superficie)
        return superficie

    def guardar(self, ruta: str) -> None:
        """Guarda la imagen en PNG (escritura atomica)."""
        superficie = self.renderizar()
        escribir_atomico(ruta, lambda f: pygame.image.save(superficie, f, os.path.basename(ruta)),
                         binario=True)


def guardar_curvas(historiales: Sequence[Tuple[str, HistorialEntrenamiento]], ruta: str,
                   titulo: Optional[str] = None) -> None:
    """Atajo: dibuja los pares (nombre, historial) y guarda el PNG."""
    grafico = GraficoCurvas(titulo=titulo or "")
    for nombre, historial in historiales:
        grafico.agregar(nombre, historial)
    grafico.guardar(ruta)
