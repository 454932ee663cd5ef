#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Configuracion
=============================================================================

Descripcion:
    Constantes del protocolo experimental, centralizadas para que una
    ejecucion fiel al protocolo solo necesite las rutas de los datos.
    Los ficheros INI de experimento (ver experimento.py) parten de estos
    valores y solo sobrescriben lo que declaran.

Secciones:
    1. Tipos de regularizador (Enum)
    2. Optimizador Adam
    3. Lotes e iteraciones
    4. Parada temprana
    5. Regularizador estocastico
    6. Similitud entre caracteristicas
    7. Rejillas de hiperparametros
    8. Validacion cruzada y significancia
    9. Arquitecturas
    10. Corpus reales
    11. Imagenes de curvas de aprendizaje

Uso:
    >>> from configuracion.config import TipoRegularizador, TAMANO_LOTE
    >>> TAMANO_LOTE[TipoRegularizador.AN]
    5

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

from enum import Enum


# =============================================================================
# TIPOS DE REGULARIZADOR (ENUM)
# =============================================================================
# Un experimento activa exactamente un tipo. El valor es el nombre que se
# escribe en los ficheros de configuracion y en las tablas de resultados.

class TipoRegularizador(Enum):
    """
    Enumeracion de los regularizadores disponibles.

    Tipos:
        AN: Penalizacion analitica del Laplaciano sobre el Jacobiano
        ST: Penalizacion estocastica por perturbaciones de pares similares
        L2: Decaimiento de pesos (sin sesgos)
        DROPOUT: Dropout invertido en capas ocultas
        NINGUNO: Sin regularizacion

    Example:
        >>> TipoRegularizador.desde_texto("an")
        <TipoRegularizador.AN: 'AN'>
    """
    AN = "AN"
    ST = "ST"
    L2 = "L2"
    DROPOUT = "DROPOUT"
    NINGUNO = "NINGUNO"

    @classmethod
    def desde_texto(cls, texto: str) -> "TipoRegularizador":
        """Convierte un nombre (sin distinguir mayusculas) en el tipo."""
        clave = texto.strip().upper()
        # Alias habituales en ficheros de configuracion
        alias = {"NONE": "NINGUNO", "NINGUNA": "NINGUNO", "ℓ2": "L2"}
        clave = alias.get(clave, clave)
        try:
            return cls(clave)
        except ValueError:
            validos = ", ".join(t.value for t in cls)
            raise ValueError(f"regularizador desconocido '{texto}' (validos: {validos})")


# =============================================================================
# OPTIMIZADOR ADAM
# =============================================================================
# Mismos valores para redes de una y de varias capas ocultas.

ALFA_ADAM = 0.001       # Tasa de aprendizaje
BETA1_ADAM = 0.9        # Decaimiento del primer momento
BETA2_ADAM = 0.999      # Decaimiento del segundo momento
EPSILON_ADAM = 1e-8     # Estabilizador del denominador


# =============================================================================
# LOTES E ITERACIONES
# =============================================================================
# El regularizador analitico es mas caro por instancia y usa lotes de 5.

TAMANO_LOTE = {
    TipoRegularizador.AN: 5,
    TipoRegularizador.ST: 20,
    TipoRegularizador.L2: 20,
    TipoRegularizador.DROPOUT: 20,
    TipoRegularizador.NINGUNO: 20,
}

ITERACIONES_MAX_AN = 5000            # Tope de actualizaciones para AN
ITERACIONES_MAX_UNA_CAPA = 10000     # Resto de tipos, una capa oculta
ITERACIONES_MAX_VARIAS_CAPAS = 20000 # Resto de tipos, dos o mas capas


# =============================================================================
# PARADA TEMPRANA
# =============================================================================

EVALUAR_CADA = 5              # Actualizaciones entre evaluaciones de validacion
PACIENCIA = 10                # Subidas consecutivas del error antes de parar
FRACCION_VALIDACION = 0.2     # Parte del entrenamiento reservada a validacion


# =============================================================================
# REGULARIZADOR ESTOCASTICO
# =============================================================================

MUESTRAS_POR_INSTANCIA = 5    # p: pares perturbados por instancia
TAMANO_VECINDARIO = 1.0       # c: cota de los coeficientes de perturbacion


# =============================================================================
# SIMILITUD ENTRE CARACTERISTICAS
# =============================================================================
# El ancho de banda del nucleo de calor se calibra para que ~20% de los
# pares fuera de la diagonal tengan similitud en [0.8, 1].

FRACCION_OBJETIVO = 0.2              # Fraccion de pares dentro de la banda
TOLERANCIA_FRACCION = 0.02           # Margen aceptado alrededor del objetivo
BANDA_SIMILITUD = (0.8, 1.0)         # Intervalo cerrado de similitud alta
ITERACIONES_BISECCION = 200          # Tope de pasos de biseccion
FRACCION_PARES = 0.2                 # Pares mas similares que se conservan
# El nucleo de calor y su calibracion son densos: d x d reales en memoria
DIMENSION_MAXIMA_NUCLEO = 10000      # Caracteristicas (unos 2 GB en el pico)


# =============================================================================
# REJILLAS DE HIPERPARAMETROS
# =============================================================================

REJILLA_ARTIFICIAL = [10.0 ** k for k in range(-3, 4)]    # λ en datos sinteticos
REJILLA_REAL = [0.001, 0.01, 0.1, 1.0, 10.0]              # λ en corpus reales
REJILLA_DROPOUT = [0.1, 0.2, 0.3, 0.4, 0.5]               # Tasa de descarte
TASA_DROPOUT_MAX = 0.9                                    # Cota superior admitida


# =============================================================================
# VALIDACION CRUZADA Y SIGNIFICANCIA
# =============================================================================

PLIEGUES_EXTERNOS = 5         # Validacion cruzada para el error de prueba
PLIEGUES_INTERNOS = 3         # Validacion cruzada interna del ajuste de λ
ALFA_MCNEMAR = 0.05           # Nivel de significancia
FRACCION_PRUEBA = 0.2         # Particion de prueba si no hay fichero aparte


# =============================================================================
# ARQUITECTURAS
# =============================================================================
# Tamanos de capas ocultas; la entrada y la salida las fija el conjunto.

CAPAS_UNA_OCULTA = [100]
CAPAS_DOS_OCULTAS = [500, 100]


# =============================================================================
# CONJUNTOS SINTETICOS
# =============================================================================
# Tamanos de referencia y divisibilidad exigida por cada esquema.

DIMENSION_SINTETICA = 3000
INSTANCIAS_SINTETICAS = 5000
CLASES_SINTETICAS = 5

DIVISOR_ESQUEMA = {"A1": 2, "A2": 4, "A3": 8}


# =============================================================================
# CORPUS REALES
# =============================================================================
# Umbral de frecuencia por corpus: se eliminan las palabras cuya cuenta
# total es menor o igual que el umbral. Los corpus no listados usan 0.
#
# Parametros por corpus:
#   - umbral: cuenta total maxima que provoca la eliminacion
#   - documentos, vocabulario, clases: tamanos de referencia tras el
#     preprocesado, solo informativos

CORPUS_REALES = {
    "bbcsport": {"umbral": 0, "documentos": 590, "vocabulario": 9759, "clases": 5},
    "twitter": {"umbral": 0, "documentos": 2486, "vocabulario": 4076, "clases": 3},
    "classic": {"umbral": 1, "documentos": 5675, "vocabulario": 7628, "clases": 4},
    "amazon": {"umbral": 0, "documentos": 6400, "vocabulario": 4502, "clases": 4},
    "20news": {"umbral": 3, "documentos": 11293, "vocabulario": 6859, "clases": 20},
    "recipe": {"umbral": 0, "documentos": 3496, "vocabulario": 4992, "clases": 15},
    "ohsumed": {"umbral": 1, "documentos": 3999, "vocabulario": 7643, "clases": 10},
    "reuter": {"umbral": 2, "documentos": 5485, "vocabulario": 5939, "clases": 8},
}


# =============================================================================
# IMAGENES DE CURVAS DE APRENDIZAJE
# =============================================================================

ANCHO_IMAGEN = 800            # Pixeles
ALTO_IMAGEN = 500             # Pixeles
MARGEN_IMAGEN = 60            # Margen para ejes y etiquetas

BLANCO = (255, 255, 255)      # Fondo
NEGRO = (0, 0, 0)             # Ejes y texto
GRIS = (200, 200, 200)        # Rejilla

# Un color por regularizador, en el orden de las tablas
COLORES_CURVAS = {
    TipoRegularizador.ST: (0, 114, 178),
    TipoRegularizador.AN: (213, 94, 0),
    TipoRegularizador.L2: (0, 158, 115),
    TipoRegularizador.DROPOUT: (204, 121, 167),
    TipoRegularizador.NINGUNO: (86, 86, 86),
}

# Trazo de cada regularizador: longitudes alternas (dibujado, hueco) en
# pixeles; vacio es linea continua. Distingue las curvas en escala de grises
PATRONES_LINEA = {
    TipoRegularizador.ST: (),
    TipoRegularizador.AN: (14, 6),
    TipoRegularizador.L2: (4, 4),
    TipoRegularizador.DROPOUT: (14, 5, 3, 5),
    TipoRegularizador.NINGUNO: (8, 8),
}

TAMANO_FUENTE_PEQUENA = 18    # Marcas de los ejes
TAMANO_FUENTE_MEDIANA = 24    # Leyenda y titulos de eje
