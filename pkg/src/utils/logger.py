#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\utils\logger.py                                             #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Wednesday, September 15th 2021, 6:02:39 pm                       #
# Modified : Tuesday, September 21st 2021, 9:58:21 am                         #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""This module provides an exception handler decorator for pipeline steps.

The decorator logs any exception raised by the decorated function, with the
caller and line, on the logger of the function's module, then re-raises it.
"""
import functools
import inspect
import logging
# --------------------------------------------------------------------------- #
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
# --------------------------------------------------------------------------- #


def configure_logging(verbose: bool = False) -> None:
    """Root logging for command-line runs: INFO, or DEBUG when verbose."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.INFO,
                        format=LOG_FORMAT)


def log_to_str(v) -> str:
    """Converts newlines to newline literals."""
    if isinstance(v, str):
        return ("").join(["'", v.replace('\n', '\\n'), "'"])
    return str(v).replace('\n', '\\n')


def exception_handler(value_to_string=log_to_str):
    """Exception handler decorator.

    Arguments:
        value_to_string (function): Converts the exception message for the
            log line. Must not throw.

    Returns:
        A decorator that logs and re-raises exceptions thrown by decorated
        functions.
    """

    def decorator(func):

        logger = logging.getLogger(func.__module__)

        @functools.wraps(func)
        def wrapper(*args, **kwds):

            try:
                return func(*args, **kwds)

            except Exception as error:
                calframe = inspect.getouterframes(inspect.currentframe(), 2)
                caller = calframe[1][3]
                line = calframe[1][2]
                logger.error('Exception thrown in %s (called from %s, line '
                             '%d), %s: %s' % (func.__qualname__, caller, line,
                                              type(error).__name__,
                                              value_to_string(str(error))))
                raise

        return wrapper

    return decorator
