#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
=============================================================================
REGULARIZADOR LATERAL - Modulo de Errores
=============================================================================

Descripcion:
    Jerarquia de excepciones del proyecto. Cada clase lleva el codigo de
    salida que usa la interfaz de linea de comandos al terminar con error.

Jerarquia:
    ErrorRegularizacion
    ├── ErrorConfiguracion (2)
    │   └── ErrorParametro (2)
    ├── ErrorDatos (3)
    │   ├── ErrorForma (3)
    │   └── ErrorContrato (3)
    └── ErrorEntrenamiento (4)

Uso:
    >>> from utilidades.errores import ErrorDatos
    >>> raise ErrorDatos("linea 3: indice fuera de rango")

Version:
    0.1

Fecha de creacion:
    Octubre 2026

Licencia:
    Codigo abierto para uso educativo y personal.
=============================================================================
"""


class ErrorRegularizacion(Exception):
    """
    Excepcion base de todos los errores del proyecto.

    Attributes:
        codigo_salida (int): Codigo de salida del proceso asociado al error.
    """
    codigo_salida = 1


class ErrorConfiguracion(ErrorRegularizacion):
    """Configuracion o especificacion invalida."""
    codigo_salida = 2


class ErrorParametro(ErrorConfiguracion):
    """Parametro numerico fuera de su dominio (sigma <= 0, c <= 0, ...)."""


class ErrorDatos(ErrorRegularizacion):
    """Datos mal formados o inconsistentes."""
    codigo_salida = 3


class ErrorForma(ErrorDatos):
    """Dimensiones de arrays que no encajan."""


class ErrorContrato(ErrorDatos):
    """Se viola una propiedad matematica exigida (p. ej. S no simetrica)."""


class ErrorEntrenamiento(ErrorRegularizacion):
    """El entrenamiento no pudo completarse."""
    codigo_salida = 4
