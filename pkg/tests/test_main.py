#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Tests de la Linea de Comandos
=============================================================================

Descripcion:
    Tests de extremo a extremo de los subcomandos synth, train, tune,
    compare y report, y de los codigos de salida.

Clases de test:
    - TestSynth: Generacion y volcado de conjuntos artificiales
    - TestTrain: Entrenamiento con ficheros de salida
    - TestTune: Ajuste por rejilla
    - TestCompare: Comparacion sobre el corpus de ejemplo
    - TestReport: Union de resultados
    - TestCodigosSalida: Errores de configuracion y de datos
    - TestEscritorio: Experimentos A1 a A3 completos (solo con FEATREG_LENTO=1)

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
import csv
import json

# Agregar el directorio src al path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from main import main
from evaluacion.tablas import filas_a_csv

RAIZ = os.path.abspath(os.path.join(os.path.dirname(__file__), '..'))
MINI = os.path.join(RAIZ, 'datos', 'mini')

CONFIG_SINTETICA = """
[experimento]
semilla = 3

[datos]
tipo = sintetico

[sintetico]
esquema = A1
d = 16
n = 120
q = 2

[red]
capas_ocultas = 6

[regularizador]
tipo = ST
fuerza = 0.1

[entrenamiento]
iteraciones_max = 40

[evaluacion]
pliegues_internos = 2
rejilla = 0.01, 0.1
"""

CONFIG_MINI = f"""
[experimento]
semilla = 5

[datos]
tipo = bow
bow = {MINI}/corpus.txt
vocabulario = {MINI}/vocabulario.txt
lateral = {MINI}/lateral.txt
palabras_parada = {MINI}/parada.txt
nombres_clase = {MINI}/nombres_clase.txt

[red]
capas_ocultas = 8

[entrenamiento]
iteraciones_max = 20

[evaluacion]
regularizadores = ST, AN, L2
pliegues_externos = 2
ajustar = no
"""


def escribir_config(tmp_path, texto, nombre="experimento.ini"):
    ruta = tmp_path / nombre
    ruta.write_text(texto, encoding="utf-8")
    return str(ruta)


def leer_csv(ruta):
    with open(ruta, "r", encoding="utf-8", newline="") as fichero:
        return list(csv.DictReader(fichero))


class TestSynth:
    """Tests del subcomando synth."""

    def test_genera_ficheros(self, tmp_path, capsys):
        """Verifica ficheros, manifiesto y línea de dispersión."""
        salida = tmp_path / "a2"
        codigo = main(["synth", "--scheme", "A2", "--d", "32", "--n", "50", "--q", "3",
                       "--seed", "3", "--out", str(salida)])
        assert codigo == 0
        nombres = {p.name for p in salida.iterdir()}
        assert {"X.csv", "etiquetas.txt", "similitud.csv", "grupos.csv",
                "manifiesto.json"} <= nombres
        assert capsys.readouterr().out.startswith("A2 d=32 no_nulos=")

        manifiesto = json.loads((salida / "manifiesto.json").read_text(encoding="utf-8"))
        assert manifiesto["comando"] == "synth"
        assert manifiesto["semilla"] == 3
        assert "numpy" in manifiesto["versiones"]

    def test_misma_semilla(self, tmp_path):
        """Verifica que dos ejecuciones con la misma semilla escriben lo mismo."""
        for nombre in ("a", "b"):
            assert main(["synth", "--scheme", "A1", "--d", "8", "--n", "20", "--q", "2",
                         "--seed", "9", "--out", str(tmp_path / nombre)]) == 0
        assert ((tmp_path / "a" / "X.csv").read_text(encoding="utf-8")
                == (tmp_path / "b" / "X.csv").read_text(encoding="utf-8"))


class TestTrain:
    """Tests del subcomando train."""

    def test_escribe_resultados(self, tmp_path):
        """Verifica modelo, historial, resumen y curva."""
        config = escribir_config(tmp_path, CONFIG_SINTETICA)
        salida = tmp_path / "train"
        assert main(["train", "--config", config, "--out", str(salida)]) == 0
        for nombre in ("modelo.npz", "historial.csv", "resumen.txt", "curva.png"):
            assert (salida / nombre).exists()
        assert ((salida / "historial.csv").read_text(encoding="utf-8").splitlines()[0]
                == "update_index,train_loss,validation_error")
        resumen = (salida / "resumen.txt").read_text(encoding="utf-8")
        assert "regularizador=ST" in resumen

    @pytest.mark.parametrize("tipo", ["AN", "L2", "DROPOUT", "NINGUNO"])
    def test_sobrescribe_regularizador(self, tmp_path, tipo):
        """Verifica --kind y --strength."""
        config = escribir_config(tmp_path, CONFIG_SINTETICA)
        salida = tmp_path / tipo
        assert main(["train", "--config", config, "--out", str(salida),
                     "--kind", tipo, "--strength", "0.2"]) == 0
        resumen = (salida / "resumen.txt").read_text(encoding="utf-8")
        assert f"regularizador={tipo}" in resumen


class TestTune:
    """Tests del subcomando tune."""

    def test_ajuste(self, tmp_path, capsys):
        """Verifica ajuste.csv y el valor elegido."""
        config = escribir_config(tmp_path, CONFIG_SINTETICA)
        salida = tmp_path / "tune"
        assert main(["tune", "--config", config, "--out", str(salida), "--threads", "2"]) == 0
        lineas = (salida / "ajuste.csv").read_text(encoding="utf-8").splitlines()
        assert lineas[0] == "valor,error_medio"
        assert len(lineas) == 3
        assert "ST: valor elegido" in capsys.readouterr().out

    def test_sin_regularizador(self, tmp_path):
        """Verifica que ajustar NINGUNO es un error de configuración."""
        config = escribir_config(tmp_path, CONFIG_SINTETICA)
        assert main(["tune", "--config", config, "--out", str(tmp_path / "t"),
                     "--kind", "NINGUNO"]) == 2


class TestCompare:
    """Tests del subcomando compare."""

    def test_corpus_mini(self, tmp_path):
        """Verifica resultados, tabla y curvas sobre el corpus de ejemplo."""
        config = escribir_config(tmp_path, CONFIG_MINI)
        salida = tmp_path / "compare"
        assert main(["compare", "--config", config, "--out", str(salida)]) == 0
        filas = leer_csv(salida / "resultados.csv")
        assert [f["regularizador"] for f in filas] == ["ST", "AN", "L2"]
        assert all(f["conjunto"] == "corpus" for f in filas)
        assert [len(f["marcas"]) for f in filas] == [2, 1, 0]
        assert all(len(f["errores_pliegues"].split(";")) == 2 for f in filas)
        assert (salida / "tabla.txt").exists()
        assert (salida / "curvas.png").exists()

    def test_reproducible(self, tmp_path):
        """Verifica que la misma semilla da la misma tabla."""
        config = escribir_config(tmp_path, CONFIG_MINI)
        for nombre in ("a", "b"):
            assert main(["compare", "--config", config, "--out", str(tmp_path / nombre),
                         "--threads", "2"]) == 0
        assert ((tmp_path / "a" / "resultados.csv").read_text(encoding="utf-8")
                == (tmp_path / "b" / "resultados.csv").read_text(encoding="utf-8"))


class TestReport:
    """Tests del subcomando report."""

    def test_une_resultados(self, tmp_path, capsys):
        """Verifica la tabla combinada de dos ficheros."""
        rutas = []
        for conjunto in ("classic", "ohsumed"):
            filas = [{"conjunto": conjunto, "regularizador": r, "error_medio": "10.0",
                      "errores_pliegues": "10.0", "lambda_elegido": "0.1", "marcas": m}
                     for r, m in (("ST", "+"), ("L2", ""))]
            ruta = tmp_path / f"{conjunto}.csv"
            ruta.write_text(filas_a_csv(filas), encoding="utf-8")
            rutas.append(str(ruta))

        salida = tmp_path / "informe"
        assert main(["report", "--results", *rutas, "--out", str(salida)]) == 0
        assert len(leer_csv(salida / "resultados.csv")) == 4
        texto = capsys.readouterr().out.splitlines()
        assert texto[0].split() == ["conjunto", "ST", "L2"]
        assert texto[1].split() == ["classic", "10.00", "+", "10.00"]

    def test_cabecera_ajena(self, tmp_path):
        """Verifica que un CSV con otra cabecera es un error de datos."""
        ruta = tmp_path / "x.csv"
        ruta.write_text("a,b\n", encoding="utf-8")
        assert main(["report", "--results", str(ruta), "--out", str(tmp_path / "r")]) == 3


class TestCodigosSalida:
    """Tests de los códigos de salida."""

    def test_config_inexistente(self, tmp_path):
        """Verifica que un fichero de configuración ausente sale con 2."""
        assert main(["train", "--config", str(tmp_path / "no.ini"), "--out", str(tmp_path)]) == 2

    @pytest.mark.parametrize("texto", [
        "[otra]\nclave = 1\n",
        "[red]\ncapas_ocultas = 0\n",
        "[regularizador]\ntipo = XYZ\n",
        "[datos]\ntipo = bow\n",
    ])
    def test_config_invalida(self, tmp_path, texto):
        """Verifica que los errores de configuración salen con 2."""
        config = escribir_config(tmp_path, texto)
        assert main(["train", "--config", config, "--out", str(tmp_path / "s")]) == 2

    def test_hilos_invalidos(self, tmp_path, monkeypatch):
        """Verifica que FEATREG_THREADS no entero sale con 2."""
        monkeypatch.setenv("FEATREG_THREADS", "muchos")
        assert main(["synth", "--d", "8", "--n", "10", "--q", "2",
                     "--out", str(tmp_path)]) == 2

    def test_hilos_cero(self, tmp_path):
        """Verifica que --threads 0 sale con 2."""
        assert main(["synth", "--d", "8", "--n", "10", "--q", "2", "--threads", "0",
                     "--out", str(tmp_path)]) == 2

    def test_nucleo_demasiado_grande(self, tmp_path):
        """Verifica que más palabras que [similitud] dimension_maxima sale con 2."""
        config = escribir_config(tmp_path, CONFIG_MINI + "\n[similitud]\ndimension_maxima = 10\n")
        assert main(["train", "--config", config, "--out", str(tmp_path / "s")]) == 2

    def test_corpus_mal_formado(self, tmp_path):
        """Verifica que un corpus ilegible sale con 3."""
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("1 1:1\n2 1:x\n", encoding="utf-8")
        config = escribir_config(tmp_path, f"[datos]\ntipo = bow\nbow = {corpus}\n"
                                           f"[regularizador]\ntipo = L2\n"
                                           f"[evaluacion]\nregularizadores = L2, DROPOUT\n")
        assert main(["train", "--config", config, "--out", str(tmp_path / "s")]) == 3


@pytest.mark.skipif(os.environ.get("FEATREG_LENTO") != "1",
                    reason="experimento de varios minutos; activar con FEATREG_LENTO=1")
class TestEscritorio:
    """Experimentos artificiales a escala de escritorio."""

    def test_st_y_an_mejoran(self, tmp_path):
        """Verifica que ST y AN superan en 5 puntos a ℓ2 y dropout (mediana de 5 semillas)."""
        config = os.path.join(RAIZ, "configs", "a1_escritorio.ini")
        errores = {"ST": [], "AN": [], "L2": [], "DROPOUT": []}
        for semilla in range(5):
            salida = tmp_path / str(semilla)
            assert main(["compare", "--config", config, "--seed", str(semilla),
                         "--out", str(salida)]) == 0
            for fila in leer_csv(salida / "resultados.csv"):
                errores[fila["regularizador"]].append(float(fila["error_medio"]))

        medianas = {nombre: float(np.median(valores)) for nombre, valores in errores.items()}
        for lateral in ("ST", "AN"):
            for referencia in ("L2", "DROPOUT"):
                assert medianas[lateral] + 5.0 <= medianas[referencia]

    @staticmethod
    def config_esquema(tmp_path, esquema):
        return escribir_config(tmp_path, f"""
[datos]
tipo = sintetico

[sintetico]
esquema = {esquema}
d = 320
n = 1000
q = 5

[evaluacion]
regularizadores = ST, L2
esquema = particion
""", nombre=f"{esquema}.ini")

    def test_ventaja_decrece_con_la_dispersion(self, tmp_path):
        """Verifica que la ventaja mediana de ST sobre ℓ2 no crece de A1 a A3."""
        ventajas = []
        for esquema in ("A1", "A2", "A3"):
            config = self.config_esquema(tmp_path, esquema)
            diferencias = []
            for semilla in range(5):
                salida = tmp_path / f"{esquema}-{semilla}"
                assert main(["compare", "--config", config, "--seed", str(semilla),
                             "--out", str(salida)]) == 0
                errores = {f["regularizador"]: float(f["error_medio"])
                           for f in leer_csv(salida / "resultados.csv")}
                diferencias.append(errores["L2"] - errores["ST"])
            ventajas.append(float(np.median(diferencias)))
        assert ventajas[0] >= ventajas[1] >= ventajas[2]
