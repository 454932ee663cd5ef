#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo Principal
=============================================================================

Descripcion:
    Interfaz de linea de comandos. Genera conjuntos sinteticos, entrena
    con cualquier regularizador, ajusta su hiperparametro, compara
    regularizadores con marcas de significancia y une tablas de
    resultados.

Subcomandos:
    - synth: Genera A1/A2/A3 y muestra la dispersion de S
    - train: Entrena una red y escribe modelo, historial, resumen y curva
    - tune: Ajusta λ (o la tasa de dropout) con validacion cruzada interna
    - compare: Compara regularizadores por validacion cruzada + McNemar
    - report: Une varios resultados.csv en una sola tabla

Opciones comunes:
    --config PATH   Fichero INI de experimento
    --seed N        Semilla maestra (sobrescribe [experimento] semilla)
    --out DIR       Directorio de salida (sobrescribe [experimento] salida)
    --threads N     Trabajos simultaneos (por defecto FEATREG_THREADS o 1)
    -v              Registro detallado (DEBUG)

Codigos de salida:
    0 exito, 2 configuracion, 3 datos, 4 entrenamiento

Uso:
    >>> python3 src/main.py synth --scheme A1 --d 300 --n 1000 --q 5 --seed 7 --out a1
    >>> python3 src/main.py compare --config configs/mini.ini --threads 4

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

import argparse
import json
import logging
import os
import platform
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import joblib
import numpy as np
import scipy
import scipy.sparse as sp
import statsmodels

# Imports internos del proyecto
from configuracion.config import TipoRegularizador
from configuracion.experimento import ConfigExperimento
from datos.corpus import (
    cargar_bow, cargar_nombres_clase, cargar_palabras_parada,
    conservar_columnas, dividir_prueba, eliminar_palabras_parada, filtrar_frecuencia,
    pliegues_k
)
from entrenamiento.entrenador import ConfigEntrenamiento, entrenar
from evaluacion.ajuste import EspecificacionRejilla, ajustar
from evaluacion.comparacion import comparar
from evaluacion.metricas import error_clasificacion
from evaluacion.tablas import combinar, filas_a_csv, renderizar_texto
from generador.sintetico import (
    EspecificacionSintetica, cargar_conjunto, formatear_estadisticas, generar, guardar_conjunto
)
from red.red import guardar_modelo, predecir
from regularizadores.analitico import FuenteLaplaciano
from regularizadores.tipos import ConfigRegularizador
from renderizador.curvas import guardar_curvas
from similitud.similitud import (
    EstructuraSimilitud, InformacionLateral, calibrar_ancho_banda, cargar_informacion_lateral,
    cargar_similitud_csv, dispersar_superiores, nucleo_calor
)
from utilidades.errores import ErrorConfiguracion, ErrorRegularizacion
from utilidades.helpers import configurar_registro, escribir_texto_atomico

import pygame  # noqa: E402  (ya importado sin saludo por utilidades.helpers)

logger = logging.getLogger("regularizador")

VARIABLE_HILOS = "FEATREG_THREADS"
CODIGO_ERROR_SISTEMA = 2
TIPOS_CON_SIMILITUD = {TipoRegularizador.AN, TipoRegularizador.ST}


# =============================================================================
# DATOS PREPARADOS
# =============================================================================

@dataclass
class DatosExperimento:
    """
    Datos listos para entrenar.

    Attributes:
        nombre: Nombre del conjunto en las tablas.
        X: Instancias de entrenamiento (densas o dispersas).
        clases: Clases desde 0.
        m: Numero de clases (salidas de la red).
        similitud: Estructura de similitud, si se construyo.
        X_prueba / clases_prueba: Conjunto de prueba aparte, si lo hay.
    """
    nombre: str
    X: object
    clases: np.ndarray
    m: int
    similitud: Optional[FuenteLaplaciano] = None
    X_prueba: object = None
    clases_prueba: Optional[np.ndarray] = None

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def sintetico(self) -> bool:
        return not sp.issparse(self.X)


# =============================================================================
# CLASE PRINCIPAL DE LA INTERFAZ
# =============================================================================

class InterfazLineaComandos:
    """
    Punto de entrada de la linea de comandos.

    Cada subcomando tiene un metodo cmd_*; ejecutar() elige el metodo con
    un diccionario y traduce las excepciones del proyecto a codigos de
    salida.

    Example:
        >>> interfaz = InterfazLineaComandos()
        >>> interfaz.ejecutar(["synth", "--scheme", "A1", "--d", "300", "--out", "a1"])
        0
    """

    def __init__(self):
        self.parser = self._construir_parser()
        self.comandos: Dict[str, Callable[[argparse.Namespace, ConfigExperimento], None]] = {
            "synth": self.cmd_synth,
            "train": self.cmd_train,
            "tune": self.cmd_tune,
            "compare": self.cmd_compare,
            "report": self.cmd_report,
        }

    # -------------------------------------------------------------------------
    # Argumentos
    # -------------------------------------------------------------------------

    def _construir_parser(self) -> argparse.ArgumentParser:
        comunes = argparse.ArgumentParser(add_help=False)
        comunes.add_argument("--config", help="fichero INI de experimento")
        comunes.add_argument("--seed", type=int, help="semilla maestra")
        comunes.add_argument("--out", help="directorio de salida")
        comunes.add_argument("--threads", type=int, help=f"trabajos simultaneos "
                             f"(por defecto ${VARIABLE_HILOS} o 1)")
        comunes.add_argument("-v", "--verbose", action="store_true", help="registro DEBUG")

        parser = argparse.ArgumentParser(
            prog="regularizador-lateral",
            description="Regularizacion de redes neuronales con informacion lateral "
                        "de las caracteristicas.")
        subparsers = parser.add_subparsers(dest="comando", required=True)

        synth = subparsers.add_parser("synth", parents=[comunes],
                                      help="genera un conjunto artificial A1/A2/A3")
        synth.add_argument("--scheme", help="esquema A1, A2 o A3")
        synth.add_argument("--d", type=int, help="numero de caracteristicas")
        synth.add_argument("--n", type=int, help="numero de instancias")
        synth.add_argument("--q", type=int, help="numero de clases")

        for nombre, ayuda in (("train", "entrena una red"),
                              ("tune", "ajusta el hiperparametro del regularizador")):
            sub = subparsers.add_parser(nombre, parents=[comunes], help=ayuda)
            sub.add_argument("--kind", help="regularizador: AN, ST, L2, DROPOUT o NINGUNO")
            sub.add_argument("--strength", type=float, help="fuerza λ (o tasa de dropout)")

        subparsers.add_parser("compare", parents=[comunes],
                              help="compara regularizadores con prueba de McNemar")

        report = subparsers.add_parser("report", parents=[comunes],
                                       help="une varios ficheros de resultados")
        report.add_argument("--results", nargs="+", required=True,
                            help="ficheros resultados.csv a unir")
        return parser

    def _hilos(self, args: argparse.Namespace) -> int:
        if args.threads is not None:
            hilos = args.threads
        else:
            texto = os.environ.get(VARIABLE_HILOS, "1")
            try:
                hilos = int(texto)
            except ValueError:
                raise ErrorConfiguracion(f"{VARIABLE_HILOS}={texto!r} no es un entero")
        if hilos < 1:
            raise ErrorConfiguracion(f"el numero de hilos debe ser >= 1, recibido {hilos}")
        return hilos

    def _cargar_config(self, args: argparse.Namespace) -> ConfigExperimento:
        config = (ConfigExperimento.desde_archivo(args.config) if args.config
                  else ConfigExperimento.desde_texto(""))
        if args.seed is not None:
            config.experimento.semilla = args.seed
        if args.out is not None:
            config.experimento.salida = args.out
        if getattr(args, "kind", None):
            try:
                config.regularizador.tipo = TipoRegularizador.desde_texto(args.kind)
            except ValueError as error:
                raise ErrorConfiguracion(str(error))
        if getattr(args, "strength", None) is not None:
            if config.regularizador.tipo is TipoRegularizador.DROPOUT:
                config.regularizador.tasa_dropout = args.strength
            else:
                config.regularizador.fuerza = args.strength
        if getattr(args, "kind", None) or getattr(args, "strength", None) is not None:
            config.resolver()
            config.validar()
        return config

    # -------------------------------------------------------------------------
    # Ejecucion
    # -------------------------------------------------------------------------

    def ejecutar(self, argv: Optional[Sequence[str]] = None) -> int:
        """Interpreta `argv`, ejecuta el subcomando y devuelve el codigo de salida."""
        args = self.parser.parse_args(argv)
        configurar_registro(logging.DEBUG if args.verbose else logging.INFO)
        try:
            config = self._cargar_config(args)
            args.hilos = self._hilos(args)
            os.makedirs(config.experimento.salida, exist_ok=True)
            self._escribir_manifiesto(config, args, argv)
            self.comandos[args.comando](args, config)
        except ErrorRegularizacion as error:
            logger.error("%s", error)
            return error.codigo_salida
        except OSError as error:
            logger.error("error de entrada/salida: %s", error)
            return CODIGO_ERROR_SISTEMA
        return 0

    def _escribir_manifiesto(self, config: ConfigExperimento, args: argparse.Namespace,
                             argv: Optional[Sequence[str]]) -> None:
        manifiesto = {
            "comando": args.comando,
            "argumentos": list(argv) if argv is not None else sys.argv[1:],
            "semilla": config.experimento.semilla,
            "hilos": args.hilos,
            "configuracion": config.a_dict(),
            "versiones": {
                "python": platform.python_version(),
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "statsmodels": statsmodels.__version__,
                "joblib": joblib.__version__,
                "pygame": pygame.version.ver,
            },
        }
        escribir_texto_atomico(self._ruta(config, "manifiesto.json"),
                               json.dumps(manifiesto, indent=2, ensure_ascii=False) + "\n")

    @staticmethod
    def _ruta(config: ConfigExperimento, nombre: str) -> str:
        return os.path.join(config.experimento.salida, nombre)

    # -------------------------------------------------------------------------
    # Preparacion de datos y similitud
    # -------------------------------------------------------------------------

    def _especificacion_sintetica(self, config: ConfigExperimento) -> EspecificacionSintetica:
        s = config.sintetico
        return EspecificacionSintetica(s.esquema, s.d, s.n, s.q, config.experimento.semilla)

    def _preparar_datos(self, config: ConfigExperimento,
                        tipos: Sequence[TipoRegularizador]) -> DatosExperimento:
        """Carga o genera los datos y construye la similitud si algun tipo la usa."""
        necesita = bool(set(tipos) & TIPOS_CON_SIMILITUD)
        if config.datos.tipo == "sintetico":
            return self._preparar_sinteticos(config, necesita)
        return self._preparar_bow(config, necesita)

    def _preparar_sinteticos(self, config: ConfigExperimento, necesita: bool) -> DatosExperimento:
        if config.datos.directorio_sintetico:
            conjunto = cargar_conjunto(config.datos.directorio_sintetico)
            nombre = os.path.basename(os.path.normpath(config.datos.directorio_sintetico))
        else:
            conjunto = generar(self._especificacion_sintetica(config))
            nombre = config.sintetico.esquema
        m = max(int(conjunto.clases.max()) + 1, config.sintetico.q)
        datos = DatosExperimento(nombre, conjunto.X, conjunto.clases, m)
        if necesita:
            fuente = config.similitud.fuente
            if fuente == "sintetico":
                datos.similitud = EstructuraSimilitud.desde_matriz(conjunto.similitud)
            elif fuente == "csv":
                datos.similitud = cargar_similitud_csv(config.similitud.archivo, datos.d)
            else:
                lateral = cargar_informacion_lateral(config.datos.lateral)
                datos.similitud = self._similitud_lateral(config, lateral, datos.d)
        return datos

    def _preparar_bow(self, config: ConfigExperimento, necesita: bool) -> DatosExperimento:
        ajustes = config.datos
        nombre = ajustes.corpus or os.path.splitext(os.path.basename(ajustes.bow))[0]
        entrenamiento = cargar_bow(ajustes.bow, ruta_vocabulario=ajustes.vocabulario, nombre=nombre)
        d_original = entrenamiento.d
        prueba = (cargar_bow(ajustes.prueba, dimension=d_original,
                             ruta_vocabulario=ajustes.vocabulario, nombre=nombre)
                  if ajustes.prueba else None)
        if ajustes.nombres_clase:
            entrenamiento.nombres_clase = cargar_nombres_clase(ajustes.nombres_clase)

        lateral = cargar_informacion_lateral(ajustes.lateral) if ajustes.lateral else None
        if lateral is not None and lateral.d != d_original:
            raise ErrorConfiguracion(f"la informacion lateral tiene {lateral.d} filas y el "
                                     f"corpus {d_original} palabras")

        columnas = np.arange(d_original)
        if ajustes.palabras_parada:
            filtrado = eliminar_palabras_parada(entrenamiento,
                                                cargar_palabras_parada(ajustes.palabras_parada),
                                                lateral)
            entrenamiento, lateral = filtrado.conjunto, filtrado.lateral
            columnas = columnas[filtrado.conservadas]
        filtrado = filtrar_frecuencia(entrenamiento, ajustes.umbral_frecuencia, lateral)
        entrenamiento, lateral = filtrado.conjunto, filtrado.lateral
        columnas = columnas[filtrado.conservadas]
        if prueba is not None:
            prueba = conservar_columnas(prueba, columnas).conjunto

        etiquetas = [entrenamiento.etiquetas] + ([prueba.etiquetas] if prueba is not None else [])
        m = int(max(e.max() for e in etiquetas))
        datos = DatosExperimento(nombre, entrenamiento.X, entrenamiento.clases, m)
        if prueba is not None:
            datos.X_prueba, datos.clases_prueba = prueba.X, prueba.clases

        if necesita:
            if config.similitud.fuente == "csv":
                completa = cargar_similitud_csv(config.similitud.archivo, d_original).similitud
                reducida = sp.csr_matrix(completa)[columnas][:, columnas]
                datos.similitud = EstructuraSimilitud.desde_matriz(reducida)
            else:
                datos.similitud = self._similitud_lateral(config, lateral, datos.d)
        logger.info("%s: %d documentos, %d palabras, %d clases", nombre, len(datos.clases),
                    datos.d, m)
        return datos

    def _similitud_lateral(self, config: ConfigExperimento, lateral: InformacionLateral,
                           d: int) -> EstructuraSimilitud:
        """Nucleo de calor calibrado y dispersado a partir de Z."""
        if lateral.d != d:
            raise ErrorConfiguracion(f"la informacion lateral tiene {lateral.d} filas y los "
                                     f"datos {d} caracteristicas")
        ajustes = config.similitud
        sigma = ajustes.ancho_banda
        if sigma is None:
            calibracion = calibrar_ancho_banda(lateral, ajustes.fraccion_objetivo,
                                               (ajustes.banda_inferior, ajustes.banda_superior),
                                               dimension_maxima=ajustes.dimension_maxima)
            sigma = calibracion.sigma
            logger.info("ancho de banda calibrado: sigma=%.6g (fraccion %.4f)", sigma,
                        calibracion.fraccion)
        completa = nucleo_calor(lateral, sigma, ajustes.dimension_maxima)
        estructura = dispersar_superiores(completa.similitud, ajustes.fraccion_pares)
        logger.info("similitud: %d pares conservados", estructura.numero_pares)
        return estructura

    def _particion_prueba(self, config: ConfigExperimento, datos: DatosExperimento
                          ) -> Tuple[object, np.ndarray, object, np.ndarray]:
        """(X_ent, clases_ent, X_prueba, clases_prueba): fichero aparte o reserva."""
        if datos.X_prueba is not None:
            return datos.X, datos.clases, datos.X_prueba, datos.clases_prueba
        entrenamiento, prueba = dividir_prueba(len(datos.clases), config.evaluacion.fraccion_prueba,
                                               config.experimento.semilla)
        return (datos.X[entrenamiento], datos.clases[entrenamiento],
                datos.X[prueba], datos.clases[prueba])

    def _config_entrenamiento(self, config: ConfigExperimento, d: int, m: int
                              ) -> ConfigEntrenamiento:
        reg = config.regularizador
        ent = config.entrenamiento
        return ConfigEntrenamiento(
            dims=[d] + list(config.red.capas_ocultas) + [m],
            regularizador=ConfigRegularizador(reg.tipo, reg.fuerza, reg.tasa_dropout,
                                              reg.vecindario, reg.muestras),
            tamano_lote=ent.tamano_lote,
            iteraciones_max=ent.iteraciones_max,
            evaluar_cada=ent.evaluar_cada,
            paciencia=ent.paciencia,
            fraccion_validacion=ent.fraccion_validacion,
            semilla=config.experimento.semilla,
            alfa=ent.alfa, beta1=ent.beta1, beta2=ent.beta2, epsilon=ent.epsilon,
        )

    @staticmethod
    def _fijos(config: ConfigExperimento) -> Dict[str, int]:
        ent = config.entrenamiento
        return {clave: valor for clave, valor in (("tamano_lote", ent.tamano_lote),
                                                   ("iteraciones_max", ent.iteraciones_max))
                if valor is not None}

    def _rejilla(self, config: ConfigExperimento) -> EspecificacionRejilla:
        evaluacion = config.evaluacion
        fuerzas = list(evaluacion.rejilla)
        return EspecificacionRejilla({
            TipoRegularizador.AN: fuerzas,
            TipoRegularizador.ST: fuerzas,
            TipoRegularizador.L2: fuerzas,
            TipoRegularizador.DROPOUT: list(evaluacion.rejilla_dropout),
        }, evaluacion.pliegues_internos)

    # -------------------------------------------------------------------------
    # Subcomandos
    # -------------------------------------------------------------------------

    def cmd_synth(self, args: argparse.Namespace, config: ConfigExperimento) -> None:
        s = config.sintetico
        especificacion = EspecificacionSintetica(
            args.scheme or s.esquema,
            args.d if args.d is not None else s.d,
            args.n if args.n is not None else s.n,
            args.q if args.q is not None else s.q,
            config.experimento.semilla)
        conjunto = generar(especificacion)
        guardar_conjunto(conjunto, config.experimento.salida)
        print(f"{especificacion.esquema} {formatear_estadisticas(conjunto.similitud)}")

    def cmd_train(self, args: argparse.Namespace, config: ConfigExperimento) -> None:
        tipo = config.regularizador.tipo
        datos = self._preparar_datos(config, [tipo])
        X, clases, X_prueba, clases_prueba = self._particion_prueba(config, datos)
        config_entrenamiento = self._config_entrenamiento(config, datos.d, datos.m)

        params, historial = entrenar(config_entrenamiento, X, clases, datos.similitud)
        error_entrenamiento = error_clasificacion(predecir(params, X), clases)
        error_prueba = error_clasificacion(predecir(params, X_prueba), clases_prueba)

        guardar_modelo(params, self._ruta(config, "modelo.npz"), config.experimento.semilla)
        escribir_texto_atomico(self._ruta(config, "historial.csv"), historial.a_csv())
        resumen = (f"conjunto={datos.nombre}\n"
                   f"regularizador={tipo.value}\n"
                   f"fuerza={config.regularizador.fuerza!r}\n"
                   f"tasa_dropout={config.regularizador.tasa_dropout!r}\n"
                   f"error_entrenamiento={error_entrenamiento:.4f}\n"
                   f"error_prueba={error_prueba:.4f}\n"
                   f"mejor_error_validacion={historial.mejor_error:.4f}\n"
                   f"actualizaciones={historial.actualizaciones}\n"
                   f"razon_parada={historial.razon_parada}\n")
        escribir_texto_atomico(self._ruta(config, "resumen.txt"), resumen)
        guardar_curvas([(tipo.value, historial)], self._ruta(config, "curva.png"),
                       titulo=datos.nombre)
        print(resumen, end="")

    def cmd_tune(self, args: argparse.Namespace, config: ConfigExperimento) -> None:
        tipo = config.regularizador.tipo
        if tipo is TipoRegularizador.NINGUNO:
            raise ErrorConfiguracion("no hay nada que ajustar sin regularizador")
        datos = self._preparar_datos(config, [tipo])
        X, clases, _, _ = self._particion_prueba(config, datos)
        resultado = ajustar(self._rejilla(config), tipo, X, clases,
                            self._config_entrenamiento(config, datos.d, datos.m),
                            datos.similitud, hilos=args.hilos, fijos=self._fijos(config))

        lineas = ["valor,error_medio"]
        lineas.extend(f"{valor!r},{error!r}" for valor, error in resultado.errores.items())
        lineas.extend(f"{valor!r},fallo" for valor in resultado.fallidos)
        escribir_texto_atomico(self._ruta(config, "ajuste.csv"), "\n".join(lineas) + "\n")
        print(f"{tipo.value}: valor elegido {resultado.mejor:g} "
              f"(error medio {resultado.errores[resultado.mejor]:.2f}%)")

    def cmd_compare(self, args: argparse.Namespace, config: ConfigExperimento) -> None:
        evaluacion = config.evaluacion
        tipos = list(evaluacion.regularizadores)
        datos = self._preparar_datos(config, tipos)
        X, clases, particiones = self._particiones_comparacion(config, datos)

        tabla, historiales = comparar(
            tipos, X, clases, particiones, self._config_entrenamiento(config, datos.d, datos.m),
            self._rejilla(config) if evaluacion.ajustar else None, datos.similitud,
            conjunto=datos.nombre, alfa=evaluacion.alfa_mcnemar,
            exacta=evaluacion.mcnemar_exacta, hilos=args.hilos, fijos=self._fijos(config))

        tabla.guardar(self._ruta(config, "resultados.csv"), self._ruta(config, "tabla.txt"))
        if historiales:
            guardar_curvas(historiales, self._ruta(config, "curvas.png"), titulo=datos.nombre)
        print(tabla.a_texto(), end="")

    def _particiones_comparacion(self, config: ConfigExperimento, datos: DatosExperimento):
        """Datos unidos y lista de particiones (entrenamiento, prueba)."""
        X, clases = datos.X, datos.clases
        n_entrenamiento = len(clases)
        if datos.X_prueba is not None:
            apilar = sp.vstack if sp.issparse(X) else np.vstack
            X = apilar([X, datos.X_prueba])
            if sp.issparse(X):
                X = X.tocsr()
            clases = np.concatenate([clases, datos.clases_prueba])

        semilla = config.experimento.semilla
        if config.evaluacion.esquema == "particion":
            if datos.X_prueba is not None:
                particiones = [(np.arange(n_entrenamiento), np.arange(n_entrenamiento, len(clases)))]
            else:
                particiones = [dividir_prueba(len(clases), config.evaluacion.fraccion_prueba, semilla)]
        else:
            plan = pliegues_k(len(clases), config.evaluacion.pliegues_externos, semilla, clases)
            particiones = [plan.particion(f) for f in range(plan.k)]
        return X, clases, particiones

    def cmd_report(self, args: argparse.Namespace, config: ConfigExperimento) -> None:
        filas = combinar(args.results)
        texto = renderizar_texto(filas)
        escribir_texto_atomico(self._ruta(config, "resultados.csv"), filas_a_csv(filas))
        escribir_texto_atomico(self._ruta(config, "tabla.txt"), texto)
        print(texto, end="")


def main(argv: Optional[List[str]] = None) -> int:
    return InterfazLineaComandos().ejecutar(argv)


# =============================================================================
# PUNTO DE ENTRADA
# =============================================================================

if __name__ == "__main__":
    sys.exit(main())
