#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tests del Modulo de Utilidades
=============================================================================

Descripcion:
    Tests unitarios para el modulo de funciones auxiliares: escritura
    atomica, derivacion de semillas, formateo de tiempos, interpolacion de
    colores y temporizador.

Clases de test:
    - TestEscrituraAtomica: Ficheros completos y sin temporales huerfanos
    - TestGeneradorDerivado: Flujos aleatorios reproducibles e independientes
    - TestSemillaDerivada: Semillas enteras derivadas
    - TestFormatearTiempo: Tests de formateo de tiempo mm:ss
    - TestInterpolarColor: Tests de interpolacion de colores RGB
    - TestTemporizador: Tests de la clase Temporizador
    - TestErrores: Jerarquia de excepciones y codigos de salida

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""

import pytest
import numpy as np
import sys
import os
import time

# Agregar el directorio src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from utilidades.helpers import (
    escribir_atomico,
    escribir_texto_atomico,
    generador_derivado,
    semilla_derivada,
    formatear_tiempo,
    interpolar_color,
    Temporizador
)
from utilidades.errores import (
    ErrorRegularizacion, ErrorConfiguracion, ErrorParametro, ErrorDatos,
    ErrorForma, ErrorContrato, ErrorEntrenamiento
)


class TestEscrituraAtomica:
    """Tests para escribir_atomico y escribir_texto_atomico."""

    def test_escribe_texto(self, tmp_path):
        """Verifica que el contenido llega completo al destino."""
        ruta = tmp_path / "salida.txt"
        escribir_texto_atomico(str(ruta), "ñandú,λ\n")
        assert ruta.read_text(encoding="utf-8") == "ñandú,λ\n"

    def test_crea_directorios(self, tmp_path):
        """Verifica que se crean los directorios intermedios."""
        ruta = tmp_path / "a" / "b" / "c.txt"
        escribir_texto_atomico(str(ruta), "x")
        assert ruta.exists()

    def test_sobrescribe(self, tmp_path):
        """Verifica que un segundo volcado reemplaza al primero."""
        ruta = tmp_path / "salida.txt"
        escribir_texto_atomico(str(ruta), "primero")
        escribir_texto_atomico(str(ruta), "segundo")
        assert ruta.read_text(encoding="utf-8") == "segundo"

    def test_binario(self, tmp_path):
        """Verifica la escritura en modo binario."""
        ruta = tmp_path / "datos.bin"
        escribir_atomico(str(ruta), lambda f: f.write(b"\x00\x01"), binario=True)
        assert ruta.read_bytes() == b"\x00\x01"

    def test_fallo_no_deja_temporales(self, tmp_path):
        """Verifica que un error del escritor no deja ficheros a medias."""
        ruta = tmp_path / "salida.txt"
        escribir_texto_atomico(str(ruta), "original")

        def escritor(fichero):
            fichero.write("parcial")
            raise RuntimeError("interrumpido")

        with pytest.raises(RuntimeError):
            escribir_atomico(str(ruta), escritor)
        assert ruta.read_text(encoding="utf-8") == "original"
        assert sorted(p.name for p in tmp_path.iterdir()) == ["salida.txt"]


class TestGeneradorDerivado:
    """Tests para la función generador_derivado."""

    def test_reproducible(self):
        """Verifica que la misma semilla y ramas dan la misma secuencia."""
        a = generador_derivado(7, 2, 0).random(5)
        b = generador_derivado(7, 2, 0).random(5)
        np.testing.assert_array_equal(a, b)

    def test_ramas_distintas(self):
        """Verifica que ramas distintas dan secuencias distintas."""
        a = generador_derivado(7, 2, 0).random(5)
        b = generador_derivado(7, 2, 1).random(5)
        assert not np.array_equal(a, b)

    def test_sin_ramas_es_default_rng(self):
        """Verifica que sin ramas equivale a default_rng(semilla)."""
        np.testing.assert_array_equal(generador_derivado(3).random(4),
                                      np.random.default_rng(3).random(4))


class TestSemillaDerivada:
    """Tests para la función semilla_derivada."""

    def test_entero_reproducible(self):
        """Verifica que devuelve el mismo entero no negativo cada vez."""
        semilla = semilla_derivada(7, 10, 0, 1)
        assert isinstance(semilla, int)
        assert semilla >= 0
        assert semilla == semilla_derivada(7, 10, 0, 1)

    @pytest.mark.parametrize("ramas_a,ramas_b", [
        ((10, 0, 0), (10, 0, 1)),
        ((10, 0, 0), (10, 1, 0)),
        ((6,), (20, 0)),
    ])
    def test_ramas_distintas(self, ramas_a, ramas_b):
        """Verifica que ramas distintas dan semillas distintas."""
        assert semilla_derivada(7, *ramas_a) != semilla_derivada(7, *ramas_b)


class TestFormatearTiempo:
    """Tests para la función formatear_tiempo."""

    def test_cero_segundos(self):
        """Verifica formato de 0 segundos."""
        assert formatear_tiempo(0) == "00:00"

    def test_minutos_y_segundos(self):
        """Verifica formato de minutos y segundos."""
        assert formatear_tiempo(125) == "02:05"

    def test_trunca_fracciones(self):
        """Verifica que las fracciones de segundo se truncan."""
        assert formatear_tiempo(125.9) == "02:05"

    def test_padding_ceros(self):
        """Verifica que se agregan ceros a la izquierda."""
        assert formatear_tiempo(5) == "00:05"
        assert formatear_tiempo(65) == "01:05"


class TestInterpolarColor:
    """Tests para la función interpolar_color."""

    def test_factor_cero(self):
        """Verifica que factor 0 devuelve el primer color."""
        assert interpolar_color((255, 0, 0), (0, 255, 0), 0) == (255, 0, 0)

    def test_factor_uno(self):
        """Verifica que factor 1 devuelve el segundo color."""
        assert interpolar_color((255, 0, 0), (0, 255, 0), 1) == (0, 255, 0)

    def test_factor_medio(self):
        """Verifica interpolación al 50%."""
        assert interpolar_color((0, 0, 0), (200, 100, 50), 0.5) == (100, 50, 25)


class TestTemporizador:
    """Tests para la clase Temporizador."""

    def test_tiempo_avanza(self):
        """Verifica que el tiempo transcurrido crece."""
        reloj = Temporizador()
        time.sleep(0.05)
        assert reloj.obtener_tiempo_transcurrido() >= 0.04


class TestErrores:
    """Tests para la jerarquía de excepciones."""

    @pytest.mark.parametrize("clase,codigo", [
        (ErrorConfiguracion, 2),
        (ErrorParametro, 2),
        (ErrorDatos, 3),
        (ErrorForma, 3),
        (ErrorContrato, 3),
        (ErrorEntrenamiento, 4),
    ])
    def test_codigos_salida(self, clase, codigo):
        """Verifica el código de salida asociado a cada error."""
        assert issubclass(clase, ErrorRegularizacion)
        assert clase("x").codigo_salida == codigo
