# -*- coding: utf8 -*-

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import json

from os.path import abspath, dirname, join

import numpy as np


TEST_DIR = abspath(dirname(__file__))


def config_path(file_name):
    return join(TEST_DIR, "data/configs", file_name)


def load_fixture(file_name):
    """Helper to fetch in the JSON document of a test configuration."""
    with open(config_path(file_name), "r") as file:
        return json.load(file)


def permutation_matrix(dims, order):
    """
    P|i_0 i_1 ...⟩ = |i_order[0] i_order[1] ...⟩, built index by index.
    """
    dims = list(dims)
    reordered = [dims[k] for k in order]
    total = int(np.prod(dims))
    matrix = np.zeros((total, total))
    for source, digits in enumerate(np.ndindex(*dims)):
        target = np.ravel_multi_index([digits[k] for k in order], reordered)
        matrix[target, source] = 1.0
    return matrix


def dense_operator(operator, dims, targets):
    """Full matrix of ``operator`` on ``targets`` ⊗ identity elsewhere."""
    rest = [k for k in range(len(dims)) if k not in targets]
    rest_dim = int(np.prod([dims[k] for k in rest])) if rest else 1
    permutation = permutation_matrix(dims, list(targets) + rest)
    return permutation.T @ np.kron(operator, np.eye(rest_dim)) @ permutation


def ket(*components):
    """Kronecker product of 1-d arrays."""
    result = np.array([1.0 + 0j])
    for component in components:
        result = np.kron(result, np.asarray(component, dtype=complex))
    return result


def apply_dense(operator, dims, targets, vector):
    """
    ``operator`` on ``targets`` of ``vector``: the target axes are moved to
    the front, the operator acts as a plain matrix, and the axes are moved
    back.
    """
    rest = [k for k in range(len(dims)) if k not in targets]
    order = list(targets) + rest
    tensor = np.asarray(vector, dtype=complex).reshape(dims).transpose(order)
    shape = tensor.shape
    target_dim = int(np.prod([dims[k] for k in targets]))
    result = (operator @ tensor.reshape(target_dim, -1)).reshape(shape)
    return result.transpose(np.argsort(order)).ravel()
