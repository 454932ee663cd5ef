#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tests de las Curvas de Aprendizaje
=============================================================================

Descripcion:
    Tests del grafico de curvas: colores y trazos por regularizador, series y
    guardado en PNG sin ventana.

Clases de test:
    - TestColores: Paleta de colores y trazos por nombre de columna
    - TestGraficoCurvas: Series, errores y guardado

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import pytest
import sys
import os

# Agregar el directorio src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pygame

from configuracion.config import (
    TipoRegularizador, COLORES_CURVAS, PATRONES_LINEA, NEGRO, BLANCO, ANCHO_IMAGEN, ALTO_IMAGEN
)
from entrenamiento.entrenador import HistorialEntrenamiento
from renderizador.curvas import (
    GraficoCurvas, color_regularizador, patron_regularizador, dibujar_trazo, guardar_curvas
)
from utilidades.errores import ErrorDatos


def historial(errores, mejor=None):
    resultado = HistorialEntrenamiento()
    for i, error in enumerate(errores, start=1):
        resultado.registrar(5 * i, 0.5, error)
    resultado.indice_mejor = errores.index(min(errores)) if mejor is None else mejor
    return resultado


class TestColores:
    """Tests para color_regularizador."""

    @pytest.mark.parametrize("nombre,tipo", [
        ("ST", TipoRegularizador.ST),
        ("an", TipoRegularizador.AN),
        ("L2#2", TipoRegularizador.L2),
        ("dropout", TipoRegularizador.DROPOUT),
    ])
    def test_paleta(self, nombre, tipo):
        """Verifica el color de cada regularizador, también en columnas repetidas."""
        assert color_regularizador(nombre) == COLORES_CURVAS[tipo]

    def test_desconocido(self):
        """Verifica que un nombre desconocido se dibuja en negro."""
        assert color_regularizador("otro") == NEGRO

    def test_trazos_distintos(self):
        """Verifica que cada regularizador tiene un trazo propio."""
        patrones = [patron_regularizador(t.value) for t in TipoRegularizador]
        assert len(set(patrones)) == len(patrones)
        assert patron_regularizador("AN#3") == PATRONES_LINEA[TipoRegularizador.AN]
        assert patron_regularizador("otro") == ()

    def test_trazo_discontinuo(self):
        """Verifica que una línea discontinua deja huecos y la continua no."""
        def pixeles_pintados(patron):
            superficie = pygame.Surface((120, 20))
            superficie.fill(BLANCO)
            dibujar_trazo(superficie, NEGRO, [(5, 10), (55, 10), (105, 10)], patron, 1)
            return sum(tuple(superficie.get_at((x, 10)))[:3] == NEGRO for x in range(5, 106))

        assert pixeles_pintados(()) == 101
        assert 50 <= pixeles_pintados((14, 6)) <= 90


class TestGraficoCurvas:
    """Tests para GraficoCurvas."""

    def test_series_y_desvanecido(self):
        """Verifica que los pliegues de una misma columna se aclaran."""
        grafico = GraficoCurvas()
        grafico.agregar("ST", historial([40.0, 30.0, 35.0]))
        grafico.agregar("ST", historial([45.0, 20.0]))
        grafico.agregar("L2", historial([50.0]))
        curvas = grafico.curvas()
        assert [c.nombre for c in curvas] == ["ST", "ST", "L2"]
        assert curvas[0].color == COLORES_CURVAS[TipoRegularizador.ST]
        assert sum(curvas[1].color) > sum(curvas[0].color)
        assert curvas[0].indices == [5, 10, 15]
        assert curvas[0].indice_mejor == 1

    def test_historial_vacio(self):
        """Verifica que un historial sin evaluaciones se rechaza."""
        with pytest.raises(ErrorDatos):
            GraficoCurvas().agregar("ST", HistorialEntrenamiento())

    def test_renderizar(self):
        """Verifica el tamaño de la superficie y el fondo blanco."""
        grafico = GraficoCurvas(ancho=400, alto=300, titulo="prueba")
        grafico.agregar("AN", historial([10.0, 5.0]))
        superficie = grafico.renderizar()
        assert superficie.get_size() == (400, 300)
        assert tuple(superficie.get_at((1, 1)))[:3] == (255, 255, 255)

    def test_guardar_png(self, tmp_path):
        """Verifica que el PNG se escribe y pygame lo puede leer."""
        ruta = tmp_path / "curvas.png"
        guardar_curvas([("ST", historial([40.0, 30.0])), ("L2", historial([50.0, 45.0]))],
                       str(ruta), titulo="A1")
        assert ruta.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert pygame.image.load(str(ruta)).get_size() == (ANCHO_IMAGEN, ALTO_IMAGEN)
        assert [p.name for p in tmp_path.iterdir()] == ["curvas.png"]

    def test_curvas_con_trazo(self):
        """Verifica que las series llevan el trazo de su regularizador."""
        grafico = GraficoCurvas()
        grafico.agregar("ST", historial([40.0, 30.0]))
        grafico.agregar("DROPOUT", historial([50.0, 45.0]))
        st, dropout = grafico.curvas()
        assert st.patron == PATRONES_LINEA[TipoRegularizador.ST]
        assert dropout.patron == PATRONES_LINEA[TipoRegularizador.DROPOUT]
        assert st.patron != dropout.patron
