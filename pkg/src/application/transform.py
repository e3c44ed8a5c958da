#!/usr/bin/env python3
# -*- coding:utf-8 -*-
# =========================================================================== #
# Project  : GAF Disturbance Classification                                   #
# Version  : 0.1.0                                                            #
# File     : \src\application\transform.py                                    #
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
"""Transform steps: encode events into GAF files and export them as images.

``EncodeEvents`` writes one image per event under ``<destination>/images``
(raw ``.gaf`` float64 matrices or ``.pgm``) plus a copy of the manifest in
which every entry gains an ``image`` path and its ``path`` is rewritten
relative to the destination. ``ExportImages`` reads such a manifest and
writes a PGM, and optionally a PNG, for every image.
"""
import logging
from pathlib import Path
from typing import List

from src.application.base import Operator
from src.domain.features.gaf import DEFAULT_IMAGE_SIZE, DEFAULT_WINDOW_S, \
    GafImage, encode_event
from src.infrastructure.data.images import GAF_SUFFIX, PGM_SUFFIX, \
    export_pgm, read_gaf_matrix, write_gaf_matrix
from src.infrastructure.data.repository import EventRepository, \
    MANIFEST_NAME, read_manifest, write_manifest
from src.utils.files import PathLike, check_file, ensure_directory, \
    relative_posix
from src.utils.logger import exception_handler
from src.visualization.visualize import render_gaf
# --------------------------------------------------------------------------- #
logger = logging.getLogger(__name__)
IMAGE_FORMATS = {'gaf': GAF_SUFFIX, 'pgm': PGM_SUFFIX}
# --------------------------------------------------------------------------- #


class EncodeEvents(Operator):
    """Encodes every event of a manifest as a GAF image file.

    Arguments:
        manifest (str): Path to the events manifest.
        destination (str): Output directory.
        window_s (float): Leading window of each event, in seconds.
        image_size (int): Side of the GAF images.
        image_format (str): 'gaf' for raw float64 matrices or 'pgm'.
    """

    def __init__(self, manifest: PathLike, destination: PathLike,
                 window_s: float = DEFAULT_WINDOW_S,
                 image_size: int = DEFAULT_IMAGE_SIZE,
                 image_format: str = 'gaf', task_id: str = 'encode') -> None:
        super(EncodeEvents, self).__init__(task_id)
        if image_format not in IMAGE_FORMATS:
            msg = "Unknown image format '{}'. Expected one of {}.".format(
                image_format, sorted(IMAGE_FORMATS))
            logger.error(msg)
            raise ValueError(msg)
        self._manifest = Path(manifest)
        self._destination = Path(destination)
        self._window_s = window_s
        self._image_size = image_size
        self._format = image_format

    @exception_handler()
    def execute(self, context: dict = None) -> Path:
        repository = EventRepository.from_manifest(self._manifest)
        data = repository.load()
        entries = {e['event_id']: e for e in read_manifest(self._manifest)}
        images_dir = ensure_directory(self._destination / 'images')
        extended = []
        for event in data:
            image = encode_event(event, self._window_s, self._image_size)
            filepath = images_dir / (event.event_id +
                                     IMAGE_FORMATS[self._format])
            if self._format == 'gaf':
                write_gaf_matrix(image, filepath)
            else:
                export_pgm(image, filepath)
            entry = dict(entries[event.event_id])
            entry['path'] = relative_posix(
                repository.directory / entry['path'], self._destination)
            entry['image'] = relative_posix(filepath, self._destination)
            entry['window_s'] = self._window_s
            entry['image_size'] = self._image_size
            extended.append(entry)
        manifest = write_manifest(extended,
                                  self._destination / MANIFEST_NAME)
        logger.info("Encoded {} events as {}x{} {} images in {}.".format(
            len(extended), self._image_size, self._image_size, self._format,
            images_dir))
        return manifest


def read_encoded_image(path: PathLike, event_id: str = '') -> GafImage:
    if Path(path).suffix != GAF_SUFFIX:
        msg = "{} is not a raw GAF matrix file.".format(path)
        logger.error(msg)
        raise ValueError(msg)
    return read_gaf_matrix(path, source_event_id=event_id)


class ExportImages(Operator):
    """Writes PGM (and optionally PNG) images for an encoded manifest.

    Arguments:
        manifest (str): Manifest written by EncodeEvents in 'gaf' format.
        destination (str): Output directory for the image files.
        png (bool): Also render each image as a PNG.
    """

    def __init__(self, manifest: PathLike, destination: PathLike,
                 png: bool = False, task_id: str = 'export-images') -> None:
        super(ExportImages, self).__init__(task_id)
        self._manifest = Path(manifest)
        self._destination = Path(destination)
        self._png = png

    @exception_handler()
    def execute(self, context: dict = None) -> List[Path]:
        entries = read_manifest(self._manifest)
        ensure_directory(self._destination)
        written = []
        for entry in entries:
            if 'image' not in entry:
                msg = "Manifest {} entry {} has no image; run encode first."\
                    .format(self._manifest, entry['event_id'])
                logger.error(msg)
                raise ValueError(msg)
            source = check_file(self._manifest.parent / entry['image'],
                                logger, 'Image')
            image = read_encoded_image(source, entry['event_id'])
            written.append(export_pgm(
                image, self._destination / (entry['event_id'] + PGM_SUFFIX)))
            if self._png:
                written.append(render_gaf(
                    image, self._destination / (entry['event_id'] + '.png'),
                    title="{} ({})".format(entry['event_id'],
                                           entry['label'])))
        logger.info("Exported {} image files to {}.".format(
            len(written), self._destination))
        return written


def export_dataset_images(data, destination: PathLike,
                          window_s: float = DEFAULT_WINDOW_S,
                          image_size: int = DEFAULT_IMAGE_SIZE) -> List[Path]:
    """PGM of every event's GAF image, straight from a Dataset."""
    destination = ensure_directory(destination)
    return [export_pgm(encode_event(event, window_s, image_size),
                       destination / (event.event_id + PGM_SUFFIX))
            for event in data]
