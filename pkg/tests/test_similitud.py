#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tests del Modulo de Similitud
=============================================================================

Descripcion:
    Tests del nucleo de calor, la calibracion del ancho de banda, la
    dispersion de S, el Laplaciano y los ficheros de similitud.

Clases de test:
    - TestNucleoCalor: Valores, limites e invarianzas del nucleo
    - TestCalibracion: Busqueda del ancho de banda
    - TestDispersion: Seleccion de los pares mas similares
    - TestLaplaciano: Filas que suman 0, semidefinicion e identidad ½
    - TestEstructuraSimilitud: Pares, incidencia y conversiones
    - TestFicheros: Informacion lateral y volcados CSV

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
import scipy.sparse as sp
import sys
import os
import math

# Agregar el directorio src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from similitud.similitud import (
    InformacionLateral, EstructuraSimilitud, nucleo_calor, ancho_banda_para,
    calibrar_ancho_banda, dispersar_superiores, laplaciano,
    cargar_informacion_lateral, guardar_similitud_csv, cargar_similitud_csv
)
from utilidades.errores import (
    ErrorConfiguracion, ErrorContrato, ErrorDatos, ErrorForma, ErrorParametro
)


def similitud_aleatoria(d, densidad, semilla):
    """S simétrica no negativa con la densidad dada fuera de la diagonal."""
    rng = np.random.default_rng(semilla)
    valores = rng.uniform(0.1, 1.0, size=(d, d)) * (rng.random((d, d)) < densidad)
    superior = np.triu(valores, k=1)
    return superior + superior.T


class TestNucleoCalor:
    """Tests para la función nucleo_calor."""

    def test_valor_conocido(self):
        """Verifica S_01 = exp(-1/2) para distancia 1 y sigma 1."""
        S = nucleo_calor(np.array([[0.0, 0.0], [1.0, 0.0]]), 1.0).similitud
        assert S[0, 1] == pytest.approx(math.exp(-0.5), rel=1e-12)

    def test_diagonal_y_simetria(self):
        """Verifica diagonal 1, simetría y rango (0, 1]."""
        Z = np.random.default_rng(0).normal(size=(15, 4))
        S = nucleo_calor(Z, 0.7).similitud
        np.testing.assert_array_equal(np.diag(S), np.ones(15))
        np.testing.assert_array_equal(S, S.T)
        assert np.all(S > 0) and np.all(S <= 1)

    def test_ancho_enorme(self):
        """Verifica que con sigma 1e9 todas las similitudes valen 1."""
        Z = np.random.default_rng(1).normal(size=(10, 3))
        S = nucleo_calor(Z, 1e9).similitud
        np.testing.assert_allclose(S, np.ones((10, 10)), atol=1e-9)

    def test_invariante_a_traslacion(self):
        """Verifica que trasladar todos los z_i no cambia S."""
        Z = np.random.default_rng(2).normal(size=(12, 5))
        S = nucleo_calor(Z, 1.3).similitud
        S_trasladada = nucleo_calor(Z + np.array([3.0, -1.0, 0.5, 2.0, -7.0]), 1.3).similitud
        np.testing.assert_allclose(S, S_trasladada, atol=1e-12)

    @pytest.mark.parametrize("sigma", [0.0, -1.0, float("nan"), float("inf")])
    def test_sigma_invalido(self, sigma):
        """Verifica que sigma no positivo o no finito se rechaza."""
        with pytest.raises(ErrorParametro):
            nucleo_calor(np.eye(3), sigma)

    def test_lateral_no_finita(self):
        """Verifica que Z con NaN es un error de datos."""
        Z = np.eye(3)
        Z[1, 1] = np.nan
        with pytest.raises(ErrorDatos):
            nucleo_calor(Z, 1.0)

    def test_lateral_demasiado_pequena(self):
        """Verifica que d < 2 se rechaza."""
        with pytest.raises(ErrorForma):
            InformacionLateral(np.ones((1, 3)))

    def test_ancho_banda_para(self):
        """Verifica la inversión del núcleo."""
        sigma = ancho_banda_para(math.sqrt(2), 0.8)
        assert math.exp(-2.0 / (2 * sigma ** 2)) == pytest.approx(0.8, rel=1e-12)

    def test_dimension_maxima(self):
        """Verifica que d por encima del límite del núcleo denso se rechaza."""
        Z = np.random.default_rng(0).normal(size=(5, 2))
        assert nucleo_calor(Z, 1.0, dimension_maxima=5).similitud.shape == (5, 5)
        with pytest.raises(ErrorConfiguracion):
            nucleo_calor(Z, 1.0, dimension_maxima=4)


class TestCalibracion:
    """Tests para la función calibrar_ancho_banda."""

    def test_alcanza_objetivo(self):
        """Verifica que el 20% de los pares queda en [0.8, 1]."""
        Z = np.random.default_rng(3).normal(size=(40, 5))
        resultado = calibrar_ancho_banda(Z)
        assert not resultado.advertencia
        assert abs(resultado.fraccion - 0.2) <= 0.02

        S = nucleo_calor(Z, resultado.sigma).similitud
        superior = S[np.triu_indices(40, k=1)]
        fraccion = np.mean((superior >= 0.8) & (superior <= 1.0))
        assert fraccion == pytest.approx(resultado.fraccion)

    @pytest.mark.parametrize("objetivo", [0.05, 0.5, 0.9])
    def test_otros_objetivos(self, objetivo):
        """Verifica objetivos distintos del de referencia."""
        Z = np.random.default_rng(4).uniform(size=(50, 3))
        resultado = calibrar_ancho_banda(Z, fraccion_objetivo=objetivo)
        assert abs(resultado.fraccion - objetivo) <= 0.02

    def test_lateral_degenerada(self):
        """Verifica que filas idénticas devuelven advertencia sin fallar."""
        resultado = calibrar_ancho_banda(np.ones((6, 2)))
        assert resultado.advertencia
        assert resultado.fraccion == 1.0

    @pytest.mark.parametrize("objetivo,banda", [
        (0.0, (0.8, 1.0)),
        (1.0, (0.8, 1.0)),
        (0.2, (0.9, 0.8)),
        (0.2, (0.0, 1.0)),
    ])
    def test_parametros_invalidos(self, objetivo, banda):
        """Verifica que objetivos o bandas inválidos se rechazan."""
        with pytest.raises(ErrorParametro):
            calibrar_ancho_banda(np.eye(4), objetivo, banda)

    def test_dimension_maxima(self):
        """Verifica que la calibración respeta el mismo límite que el núcleo."""
        Z = np.random.default_rng(1).normal(size=(6, 2))
        with pytest.raises(ErrorConfiguracion):
            calibrar_ancho_banda(Z, dimension_maxima=5)


class TestDispersion:
    """Tests para la función dispersar_superiores."""

    def test_ejemplo_basico(self):
        """Verifica que se conserva el par más similar."""
        S = np.array([[1, .9, .5], [.9, 1, .1], [.5, .1, 1]])
        estructura = dispersar_superiores(S, 1 / 3)
        assert list(zip(estructura.pares_i, estructura.pares_j)) == [(0, 1)]
        assert estructura.similitud[0, 1] == 0.9
        assert estructura.similitud[0, 2] == 0.0
        # La diagonal se mantiene
        np.testing.assert_array_equal(estructura.similitud.diagonal(), np.ones(3))

    def test_cupo_redondea_hacia_arriba(self):
        """Verifica que se conservan ceil(f · d(d-1)/2) pares."""
        S = similitud_aleatoria(10, 1.0, 5)
        estructura = dispersar_superiores(S, 0.2)
        assert estructura.numero_pares == 9

    def test_empates_lexicograficos(self):
        """Verifica que los empates se resuelven por (i, j) ascendente."""
        S = np.full((4, 4), 0.5)
        estructura = dispersar_superiores(S, 0.5)
        assert list(zip(estructura.pares_i, estructura.pares_j)) == [(0, 1), (0, 2), (0, 3)]

    def test_no_conserva_ceros(self):
        """Verifica que una S binaria con pocos no nulos los conserva todos."""
        S = np.zeros((6, 6))
        S[1, 4] = S[4, 1] = 1.0
        estructura = dispersar_superiores(S, 0.5)
        assert list(zip(estructura.pares_i, estructura.pares_j)) == [(1, 4)]

    def test_mayores_valores(self):
        """Verifica que ningún par descartado supera a uno conservado."""
        S = similitud_aleatoria(12, 1.0, 6)
        estructura = dispersar_superiores(S, 0.3)
        minimo = estructura.pesos.min()
        conservados = set(zip(estructura.pares_i.tolist(), estructura.pares_j.tolist()))
        for i, j in zip(*np.triu_indices(12, k=1)):
            if (i, j) not in conservados:
                assert S[i, j] <= minimo

    def test_dispersa_igual_que_densa(self):
        """Verifica que la entrada dispersa da los mismos pares."""
        S = similitud_aleatoria(9, 0.6, 7)
        densa = dispersar_superiores(S, 0.25)
        dispersa = dispersar_superiores(sp.csr_matrix(S), 0.25)
        np.testing.assert_array_equal(densa.pares_i, dispersa.pares_i)
        np.testing.assert_array_equal(densa.pares_j, dispersa.pares_j)
        np.testing.assert_allclose(densa.pesos, dispersa.pesos)

    @pytest.mark.parametrize("fraccion", [0.0, -0.1, 1.5])
    def test_fraccion_invalida(self, fraccion):
        """Verifica que la fracción debe estar en (0, 1]."""
        with pytest.raises(ErrorParametro):
            dispersar_superiores(np.eye(3), fraccion)

    def test_no_simetrica(self):
        """Verifica que una S no simétrica viola el contrato."""
        S = np.eye(3)
        S[0, 1] = 0.5
        with pytest.raises(ErrorContrato):
            dispersar_superiores(S, 0.5)


class TestLaplaciano:
    """Tests para la función laplaciano."""

    @pytest.mark.parametrize("semilla", range(5))
    def test_filas_suman_cero_y_semidefinido(self, semilla):
        """Verifica ‖L·1‖ ≤ 1e-10 y xᵀLx ≥ -1e-10."""
        S = similitud_aleatoria(15, 0.4, semilla)
        L = laplaciano(S)
        assert np.max(np.abs(L @ np.ones(15))) <= 1e-10
        rng = np.random.default_rng(semilla)
        for _ in range(100):
            x = rng.normal(size=15)
            assert x @ L @ x >= -1e-10

    def test_identidad_medio(self):
        """Verifica uᵀLu = ½ Σ_ij S_ij (u_i - u_j)²."""
        S = similitud_aleatoria(8, 0.5, 11)
        L = laplaciano(S)
        u = np.random.default_rng(11).normal(size=8)
        suma = 0.5 * sum(S[i, j] * (u[i] - u[j]) ** 2 for i in range(8) for j in range(8))
        assert u @ L @ u == pytest.approx(suma, rel=1e-10)

    def test_disperso(self):
        """Verifica que la entrada dispersa da el mismo L en CSR."""
        S = similitud_aleatoria(7, 0.5, 12)
        L = laplaciano(sp.csr_matrix(S))
        assert sp.issparse(L)
        np.testing.assert_allclose(L.toarray(), laplaciano(S), atol=1e-14)

    def test_negativos(self):
        """Verifica que elementos negativos violan el contrato."""
        with pytest.raises(ErrorContrato):
            laplaciano(np.array([[0.0, -1.0], [-1.0, 0.0]]))


class TestEstructuraSimilitud:
    """Tests para EstructuraSimilitud."""

    def test_desde_pares(self):
        """Verifica la matriz simétrica construida desde pares."""
        estructura = EstructuraSimilitud.desde_pares(4, [0, 1], [2, 3], [0.5, 0.25])
        S = estructura.similitud.toarray()
        assert S[0, 2] == S[2, 0] == 0.5
        assert S[1, 3] == S[3, 1] == 0.25
        assert estructura.numero_pares == 2

    @pytest.mark.parametrize("pares_i,pares_j", [
        ([1], [1]),
        ([2], [1]),
        ([0], [4]),
        ([0, 0], [1, 1]),
    ])
    def test_pares_invalidos(self, pares_i, pares_j):
        """Verifica que pares fuera de orden, de rango o repetidos se rechazan."""
        with pytest.raises(ErrorDatos):
            EstructuraSimilitud.desde_pares(4, pares_i, pares_j, np.ones(len(pares_i)))

    def test_incidencia(self):
        """Verifica que E u da u_i - u_j para cada par."""
        estructura = EstructuraSimilitud.desde_pares(4, [0, 1], [2, 3], [1.0, 1.0])
        u = np.array([5.0, 1.0, 2.0, 7.0])
        np.testing.assert_array_equal(estructura.matriz_incidencia() @ u, [3.0, -6.0])

    def test_desde_matriz_densa_y_dispersa(self):
        """Verifica que ambas representaciones enumeran los mismos pares."""
        S = similitud_aleatoria(6, 0.5, 13)
        densa = EstructuraSimilitud.desde_matriz(S)
        dispersa = EstructuraSimilitud.desde_matriz(sp.csr_matrix(S))
        np.testing.assert_array_equal(densa.pares_i, dispersa.pares_i)
        np.testing.assert_array_equal(densa.pares_j, dispersa.pares_j)
        np.testing.assert_allclose(densa.pesos, dispersa.pesos)


class TestFicheros:
    """Tests de lectura y escritura de ficheros de similitud."""

    def test_lateral_con_cabecera(self, tmp_path):
        """Verifica la lectura con cabecera '# d c'."""
        ruta = tmp_path / "lateral.txt"
        ruta.write_text("# 3 2\n0 1\n\n1 0\n2 2\n", encoding="utf-8")
        lateral = cargar_informacion_lateral(str(ruta))
        assert (lateral.d, lateral.c) == (3, 2)

    @pytest.mark.parametrize("contenido", [
        "# 4 2\n0 1\n1 0\n2 2\n",
        "0 1\n1 0 3\n",
        "0 1\nx 0\n",
        "",
    ])
    def test_lateral_invalida(self, tmp_path, contenido):
        """Verifica cabeceras incoherentes, columnas irregulares y valores no numéricos."""
        ruta = tmp_path / "lateral.txt"
        ruta.write_text(contenido, encoding="utf-8")
        with pytest.raises(ErrorDatos):
            cargar_informacion_lateral(str(ruta))

    def test_volcado_csv(self, tmp_path):
        """Verifica que el volcado conserva pares y pesos."""
        estructura = dispersar_superiores(similitud_aleatoria(8, 0.7, 14), 0.3)
        ruta = tmp_path / "s.csv"
        guardar_similitud_csv(estructura, str(ruta))
        leida = cargar_similitud_csv(str(ruta), 8)
        np.testing.assert_array_equal(leida.pares_i, estructura.pares_i)
        np.testing.assert_array_equal(leida.pesos, estructura.pesos)

    def test_csv_orden_indistinto(self, tmp_path):
        """Verifica que 'j,i' se normaliza a i < j."""
        ruta = tmp_path / "s.csv"
        ruta.write_text("i,j,s_ij\n3,1,0.5\n", encoding="utf-8")
        estructura = cargar_similitud_csv(str(ruta), 4)
        assert (estructura.pares_i[0], estructura.pares_j[0]) == (1, 3)
