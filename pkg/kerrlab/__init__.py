# -*- coding: utf8 -*-

from __future__ import (
    absolute_import,
    division,
    print_function,
    unicode_literals
)

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("kerrlab")
except PackageNotFoundError:
    # running from a source checkout
    __version__ = "0.1.0"
