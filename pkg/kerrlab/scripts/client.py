# -*- coding: utf8 -*-

"""
Kerr-cell quantum optics simulations driven by a JSON run configuration

Usage:
    kerr-lab run [options] <config>
    kerr-lab validate [options] <config>
    kerr-lab --version
    kerr-lab --help

Arguments:
  <config>        Path to the JSON run configuration.

Options:
  -o, --out=<dir>     Output directory; overrides "output_dir" of the config.
  -s, --seed=<n>      Seed; overrides "seed" of the config.
  -v, --verbose       Increase logging verbosity to DEBUG.
  --version           Display program's version number and exit.
  -h, --help          Display this help message and exit.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals


import sys
import logging

from docopt import docopt
from .. import __version__
from ..config import load_config, validate_file
from ..errors import ConfigInvalid, ParseError
from ..runner import EXIT_CONFIG_INVALID, EXIT_OK, run


def parse_args(argv=None):
    return docopt(__doc__, argv=argv, version=__version__)


def _seed(value):
    try:
        seed = int(value)
    except ValueError:
        seed = -1
    if seed < 0:
        raise ConfigInvalid(["--seed: expected a non-negative integer, got %r" % value])
    return seed


def main(argv=None):
    args = parse_args(argv)
    logger = logging.getLogger("kerrlab")

    if args["--verbose"]:
        logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
        logger.setLevel(logging.DEBUG)

    path = args["<config>"]
    try:
        if args["validate"]:
            diagnostics = validate_file(path)
            for diagnostic in diagnostics:
                print(diagnostic)
            return EXIT_CONFIG_INVALID if diagnostics else EXIT_OK

        config = load_config(path)
        seed = _seed(args["--seed"]) if args["--seed"] is not None else None
        config = config.with_overrides(output_dir=args["--out"], seed=seed)
    except (ConfigInvalid, ParseError) as e:
        print("%s: %s" % (path, e), file=sys.stderr)
        return EXIT_CONFIG_INVALID

    return run(config)


if __name__ == '__main__':
    sys.exit(main())
