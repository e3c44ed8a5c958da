#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\application\base.py                                         #
# Language : Python 3.9.5                                                     #
# --------------------------------------------------------------------------  #
# Author   : John James                                                       #
# Company  : nov8.ai                                                          #
# Email    : john.james@nov8.ai                                               #
# URL      : https://github.com/john-james-sf/gaf-disturbance-classification  #
# --------------------------------------------------------------------------  #
# Created  : Tuesday, September 7th 2021, 2:48:03 pm                          #
# Modified : Sunday, September 19th 2021, 3:17:52 pm                          #
# Modifier : John James (john.james@nov8.ai)                                  #
# --------------------------------------------------------------------------- #
# License  : BSD 3-clause "New" or "Revised" License                          #
# Copyright: (c) 2021 nov8.ai                                                 #
# =========================================================================== #
"""Base class of the pipeline operators."""
from abc import ABC, abstractmethod
import logging
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
# --------------------------------------------------------------------------- #


class Operator(ABC):
    """One named pipeline step.

    Arguments:
        task_id (str): Name of the step, used in log lines.
    """

    def __init__(self, task_id: str) -> None:
        self._task_id = task_id

    @property
    def task_id(self) -> str:
        return self._task_id

    @abstractmethod
    def execute(self, context: dict = None):
        pass

    def __repr__(self) -> str:
        return "{}(task_id={!r})".format(self.__class__.__name__,
                                         self._task_id)
