#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tests de la Red
=============================================================================

Descripcion:
    Tests de la red sigmoide: inicializacion, pasada hacia delante,
    Jacobiano, tensores de sensibilidad, perdida y persistencia.

Clases de test:
    - TestInicializacion: Glorot y parametros invalidos
    - TestPropagacion: Valores, formas y prediccion
    - TestSensibilidad: delta, G, B y J frente a diferencias finitas
    - TestPerdida: Entropia cruzada y su gradiente
    - TestPersistencia: Guardado y carga de modelos

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

# Agregar el directorio src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))
# Helpers de tests junto a este fichero
sys.path.insert(0, os.path.dirname(__file__))

from red.red import (
    ParametrosRed, inicializar_glorot, propagar, propagar_desde_preactivacion,
    predecir, tensores_sensibilidad, contraer_b, jacobiano, codificar_one_hot,
    perdida_entropia_cruzada, gradientes_perdida, guardar_modelo, cargar_modelo
)
from utilidades.errores import ErrorConfiguracion, ErrorDatos, ErrorForma
from diferencias_finitas import comprobar_gradiente, error_relativo, gradiente_numerico


def red_con_sesgos(dims, semilla=0):
    """Red de Glorot con sesgos no nulos para no caer en casos simétricos."""
    params = inicializar_glorot(dims, semilla)
    rng = np.random.default_rng(semilla + 100)
    for b in params.sesgos:
        b[:] = rng.uniform(-0.5, 0.5, size=b.shape)
    return params


class TestInicializacion:
    """Tests para inicializar_glorot."""

    def test_cotas_y_formas(self):
        """Verifica |W| ≤ sqrt(6/(h_k + h_{k+1})) y b = 0."""
        params = inicializar_glorot([30, 20, 5], semilla=1)
        assert params.dims == [30, 20, 5]
        assert params.pesos[0].shape == (20, 30)
        assert np.all(np.abs(params.pesos[0]) <= np.sqrt(6 / 50))
        assert np.all(np.abs(params.pesos[1]) <= np.sqrt(6 / 25))
        assert all(np.all(b == 0) for b in params.sesgos)

    def test_reproducible(self):
        """Verifica que la misma semilla da los mismos pesos."""
        a = inicializar_glorot([6, 4, 2], 3).aplanar()
        b = inicializar_glorot([6, 4, 2], 3).aplanar()
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("dims", [[5], [5, 0, 2], []])
    def test_dims_invalidas(self, dims):
        """Verifica que faltan capas o hay capas vacías."""
        with pytest.raises(ErrorConfiguracion):
            inicializar_glorot(dims, 0)

    def test_formas_incoherentes(self):
        """Verifica que W y b deben encajar."""
        with pytest.raises(ErrorForma):
            ParametrosRed([np.ones((3, 2))], [np.ones(2)])

    def test_aplanar_y_reconstruir(self):
        """Verifica que con_vector invierte aplanar."""
        params = red_con_sesgos([4, 3, 2])
        copia = params.con_vector(params.aplanar())
        for a, b in zip(params.pesos + params.sesgos, copia.pesos + copia.sesgos):
            np.testing.assert_array_equal(a, b)


class TestPropagacion:
    """Tests para propagar y predecir."""

    def test_sigmoide_de_uno(self):
        """Verifica φ = sigmoide(1) para una red 1-1 con W=2, b=-1, x=1."""
        params = ParametrosRed([np.array([[2.0]])], [np.array([-1.0])])
        salida = propagar(params, np.array([1.0])).salida
        assert salida[0, 0] == pytest.approx(1 / (1 + np.exp(-1)), rel=1e-12)

    def test_formas_de_la_traza(self):
        """Verifica las formas de a[k] y z[k]."""
        traza = propagar(red_con_sesgos([5, 4, 3]), np.ones((7, 5)))
        assert [a.shape for a in traza.preactivaciones] == [(7, 4), (7, 3)]
        assert [z.shape for z in traza.activaciones] == [(7, 5), (7, 4), (7, 3)]

    def test_columnas_incorrectas(self):
        """Verifica que una entrada de dimensión errónea se rechaza."""
        with pytest.raises(ErrorForma):
            propagar(red_con_sesgos([5, 2]), np.ones((3, 4)))

    def test_entrada_no_finita(self):
        """Verifica que NaN en la entrada es un error de datos."""
        x = np.ones((2, 3))
        x[0, 0] = np.nan
        with pytest.raises(ErrorDatos):
            propagar(red_con_sesgos([3, 2]), x)

    def test_prediccion_dispersa_igual_a_densa(self):
        """Verifica que predecir da lo mismo con CSR y por bloques."""
        params = red_con_sesgos([8, 6, 3], 2)
        X = np.random.default_rng(2).poisson(0.5, size=(25, 8)).astype(float)
        densa = predecir(params, X)
        dispersa = predecir(params, sp.csr_matrix(X), tamano_bloque=4)
        np.testing.assert_array_equal(densa, dispersa)
        assert densa.min() >= 0 and densa.max() < 3


class TestSensibilidad:
    """Tests de delta, G, B y el Jacobiano frente a diferencias finitas."""

    @pytest.mark.parametrize("dims", [[4, 3, 2], [5, 4, 3, 2]])
    def test_jacobiano(self, dims):
        """Verifica J(x) = ∂φ/∂x."""
        params = red_con_sesgos(dims, 4)
        x = np.random.default_rng(4).uniform(size=dims[0])
        J = jacobiano(params, propagar(params, x))[0]
        for j in range(dims[-1]):
            numerico = gradiente_numerico(lambda v: propagar(params, v).salida[0, j], x)
            assert error_relativo(J[j], numerico) < 1e-5

    def test_jacobiano_lineal(self):
        """Verifica que la red identidad de una capa tiene J = W."""
        W = np.array([[1.0, -2.0, 0.5], [0.0, 3.0, 1.0]])
        params = ParametrosRed([W], [np.zeros(2)], "identidad")
        J = jacobiano(params, propagar(params, np.ones((4, 3))))
        for n in range(4):
            np.testing.assert_array_equal(J[n], W)

    def test_delta_y_g(self):
        """Verifica delta[0] = ∂φ/∂a[0], G[K] = ∂a[K]/∂a[0] y G[0] = I."""
        params = red_con_sesgos([4, 3, 3, 2], 5)
        x = np.random.default_rng(5).uniform(size=(1, 4))
        a0 = x @ params.pesos[0].T + params.sesgos[0]
        tensores = tensores_sensibilidad(params, propagar(params, x))

        np.testing.assert_array_equal(tensores.G[0][0], np.eye(3))
        for j in range(2):
            numerico = gradiente_numerico(
                lambda v: propagar_desde_preactivacion(params, v[None, :], x).salida[0, j], a0[0])
            assert error_relativo(tensores.delta[0][0, :, j], numerico) < 1e-5
        for l in range(2):
            numerico = gradiente_numerico(
                lambda v: propagar_desde_preactivacion(params, v[None, :], x).preactivaciones[-1][0, l],
                a0[0])
            assert error_relativo(tensores.G[-1][0, l], numerico) < 1e-5

    def test_b(self):
        """Verifica B[0]_ljg = ∂delta[0]_lj / ∂a[0]_g."""
        params = red_con_sesgos([4, 3, 3, 2], 6)
        x = np.random.default_rng(6).uniform(size=(1, 4))
        a0 = x @ params.pesos[0].T + params.sesgos[0]
        B = tensores_sensibilidad(params, propagar(params, x)).B[0][0]

        def delta_desde(v, l, j):
            traza = propagar_desde_preactivacion(params, v[None, :], x)
            return tensores_sensibilidad(params, traza, calcular_b=False).delta[0][0, l, j]

        for l in range(3):
            for j in range(2):
                numerico = gradiente_numerico(lambda v: delta_desde(v, l, j), a0[0])
                assert error_relativo(B[l, j], numerico) < 1e-5

    def test_b_nulo_lineal(self):
        """Verifica B = 0 en todas las capas con activación identidad."""
        rng = np.random.default_rng(9)
        params = ParametrosRed([rng.normal(size=(3, 4)), rng.normal(size=(2, 3))],
                               [rng.normal(size=3), rng.normal(size=2)], "identidad")
        tensores = tensores_sensibilidad(params, propagar(params, rng.uniform(size=(5, 4))))
        for B in tensores.B:
            np.testing.assert_array_equal(B, np.zeros_like(B))

    def test_contraer_b(self):
        """Verifica que la contracción coincide con Σ_jg B_ljg Q_gj."""
        params = red_con_sesgos([4, 3, 3, 2], 7)
        x = np.random.default_rng(7).uniform(size=(3, 4))
        tensores = tensores_sensibilidad(params, propagar(params, x))
        Q = np.random.default_rng(8).normal(size=(3, 3, 2))
        T = contraer_b(params, tensores, Q)
        for k in range(3):
            esperado = np.einsum("nljg,ngj->nl", tensores.B[k], Q)
            np.testing.assert_allclose(T[k], esperado, atol=1e-12)


class TestPerdida:
    """Tests de la entropía cruzada."""

    def test_valor(self):
        """Verifica -log 0.5 para φ = 0.5 e y = 1."""
        assert perdida_entropia_cruzada(np.array([1.0]), np.array([0.5])) == pytest.approx(np.log(2))

    def test_recorte(self):
        """Verifica que φ = 0 da una pérdida finita."""
        assert np.isfinite(perdida_entropia_cruzada(np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]])))

    @pytest.mark.parametrize("y", [
        np.array([[0.5, 0.5]]),
        np.array([[1.0, 1.0]]),
        np.array([[0.0, 0.0]]),
    ])
    def test_no_one_hot(self, y):
        """Verifica que objetivos que no son one-hot se rechazan."""
        with pytest.raises(ErrorDatos):
            perdida_entropia_cruzada(y, np.full((1, 2), 0.5))

    def test_one_hot(self):
        """Verifica la codificación y el rango de clases."""
        np.testing.assert_array_equal(codificar_one_hot(np.array([2, 0]), 3),
                                      [[0, 0, 1], [1, 0, 0]])
        with pytest.raises(ErrorDatos):
            codificar_one_hot(np.array([3]), 3)

    @pytest.mark.parametrize("dims", [[4, 3], [4, 5, 3], [4, 5, 4, 3]])
    def test_gradiente(self, dims):
        """Verifica el gradiente de la pérdida con diferencias finitas."""
        params = red_con_sesgos(dims, 9)
        rng = np.random.default_rng(9)
        x = rng.uniform(size=(6, dims[0]))
        y = codificar_one_hot(rng.integers(dims[-1], size=6), dims[-1])
        analitico = gradientes_perdida(params, propagar(params, x), y)
        comprobar_gradiente(params, lambda p: perdida_entropia_cruzada(y, propagar(p, x).salida),
                            analitico)


class TestPersistencia:
    """Tests de guardar_modelo y cargar_modelo."""

    def test_guardar_y_cargar(self, tmp_path):
        """Verifica que se conservan pesos, activación y semilla."""
        params = red_con_sesgos([5, 4, 3], 10)
        ruta = tmp_path / "modelo.npz"
        guardar_modelo(params, str(ruta), semilla=42)
        cargado, semilla = cargar_modelo(str(ruta))
        assert semilla == 42
        assert cargado.activacion == "sigmoide"
        np.testing.assert_array_equal(cargado.aplanar(), params.aplanar())
