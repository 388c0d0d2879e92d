# -*- coding: utf8 -*-

"""
Runs a validated configuration end to end and writes its artifacts and a
manifest into the output directory.
"""

from __future__ import absolute_import
from __future__ import division, print_function, unicode_literals

import os
import cmath
import logging

from . import __version__
from .errors import ComputeError, KerrLabError
from .fock import coherent_state, coherent_superposition, fidelity
from .formats import (
    dataset_csv,
    dataset_sidecar,
    density_matrix_to_dict,
    dumps,
    atomic_write,
    fringe_csv,
    state_to_dict,
    wigner_csv,
)
from .optics import KerrParams
from .phase_space import GridSpec, NoiseModel, default_phases, homodyne_sample, parity, wigner
from .scenarios import (
    InterferometerParams,
    cat_generate,
    cat_reference,
    default_theta_grid,
    eraser_expected_n4_analytic,
    eraser_simulate,
    eve_analysis,
    fringe_fit,
    ghz_report,
    mz_expected_n4_analytic,
    mz_simulate,
    which_path_readout,
)
from .tomography import (
    ReconstructionConfig,
    fidelity_to,
    identification_sweep,
    negativity_report,
    reconstruct_or_last,
)


logger = logging.getLogger("kerrlab")


EXIT_OK = 0
EXIT_COMPUTE_ERROR = 1
EXIT_CONFIG_INVALID = 2

MANIFEST = "manifest.json"


def _kerr(parameters, time_key="T"):
    return KerrParams(
        parameters["chi"], parameters.get("chi_s", 0.0), parameters.get("omega_s", 0.0),
        parameters[time_key])


def _interferometer(parameters, second_kerr=None):
    return InterferometerParams(
        _kerr(parameters),
        parameters["nu"],
        second_kerr=second_kerr,
        theta_offset=parameters["theta_offset"],
        coherence_jitter_sigma=parameters.get("jitter_sigma", 0.0),
        jitter_mode=parameters.get("jitter_mode", "gaussian"),
        transmittance=parameters["transmittance"],
        probe_cutoff=parameters["probe_cutoff"],
    )


def _scan_grid(parameters):
    return default_theta_grid(parameters["theta_points"]) + parameters["theta_offset"]


def _fit_visibility(theta, n4):
    mean, amplitude, _ = fringe_fit(theta, n4)
    return min(amplitude / mean, 1.0) if mean > 0 else 0.0


def run_interfere(config):
    parameters = config.parameters
    params = _interferometer(parameters)
    theta = _scan_grid(parameters)
    scan = mz_simulate(params, theta)

    expected = [mz_expected_n4_analytic(params, t) for t in theta]
    readout = which_path_readout(params)
    summary = dict(scan.summary())
    summary.update({
        "analytic_visibility": _fit_visibility(theta, expected),
        "envelope": params.envelope,
        "max_deviation_from_analytic": max(
            abs(a - b) for a, b in zip(scan.n4_values, expected)),
        "which_path": {
            "lo_phase": readout.lo_phase,
            "mean_arm2": readout.mean_arm2,
            "mean_arm3": readout.mean_arm3,
            "error_probability": readout.error_probability,
        },
    })
    return [("fringe.csv", fringe_csv(scan)), ("summary.json", dumps(summary))]


def run_erase(config):
    parameters = config.parameters
    second = _kerr(parameters).with_time(parameters["T_prime"])
    params = _interferometer(parameters, second)
    theta = _scan_grid(parameters)
    scan = eraser_simulate(
        params, theta, parameters["jitter_trials"], config.seed, parameters["workers"])

    summary = dict(scan.summary())
    summary.update({
        "visibility_without_jitter": _fit_visibility(
            theta, [eraser_expected_n4_analytic(params, t) for t in theta]),
        "jitter_mode": params.jitter_mode,
        "jitter_sigma": params.coherence_jitter_sigma,
        "jitter_trials": parameters["jitter_trials"],
    })
    return [("fringe.csv", fringe_csv(scan)), ("summary.json", dumps(summary))]


def run_cat(config):
    parameters = config.parameters
    kerr = _kerr(parameters)
    outcome = parameters["outcome"]
    probe, probability = cat_generate(parameters["nu"], kerr, outcome, parameters["cutoff"])

    cutoff = probe.layout.modes[0].cutoff
    reference = cat_reference(parameters["nu"], kerr, outcome, cutoff)
    nu = parameters["nu"]
    overlap = coherent_state(nu, cutoff).inner(
        coherent_state(nu * cmath.exp(-1j * kerr.probe_phase), cutoff))
    sign = 1.0 if outcome == 45 else -1.0

    grid = wigner(probe, GridSpec.for_amplitude(nu, parameters["wigner_points"]))
    minimum, location = grid.minimum()
    summary = {
        "outcome": outcome,
        "probability": probability,
        "expected_probability": 0.5 * (1.0 + sign * overlap.real),
        "fidelity": fidelity(reference, probe),
        "parity": parity(probe),
        "wigner_min": minimum,
        "wigner_min_location": list(location),
        "wigner_integral": grid.integral(),
    }
    return [
        ("cat_state.json", dumps(state_to_dict(probe))),
        ("wigner.csv", wigner_csv(grid)),
        ("summary.json", dumps(summary)),
    ]


def run_ghz(config):
    parameters = config.parameters
    report = ghz_report(parameters["bell"], parameters["phi"])
    result = {
        "bell": report.bell,
        "phi": report.phi,
        "fidelity": report.fidelity,
        "fidelity_at_pi_over_2": report.quarter_turn_fidelity,
        "reduced_state_deviation": report.reduced_deviation,
    }
    return [
        ("ghz_state.json", dumps(state_to_dict(report.state))),
        ("fidelity.json", dumps(result)),
    ]


def run_eve(config):
    parameters = config.parameters
    report = eve_analysis(parameters["phi"], parameters["alphabet"], parameters["transmittance"])
    result = {
        "eve_info_bound": report.eve_info_bound,
        "bob_qber": report.bob_qber,
        "probe_overlap": report.probe_overlap,
        "bases": [
            {"labels": list(basis.labels), "p_guess": basis.p_guess,
             "info_bound": basis.info_bound, "qber": basis.qber}
            for basis in report.bases
        ],
        "symbols": [{"label": label, "qber": qber} for label, qber in report.symbol_qber],
        "joint_state": state_to_dict(report.joint_state),
    }
    return [("eve_report.json", dumps(result))]


def _tomography_state(parameters):
    nu = parameters["nu"]
    sign = -1.0 if parameters["parity"] == "odd" else 1.0
    return coherent_superposition([nu, -nu], [1.0, sign])


def _noise(parameters):
    return NoiseModel(parameters["noise_kind"], parameters["sigma_fraction"], parameters["eta"])


def run_tomo(config):
    parameters = config.parameters
    state = _tomography_state(parameters)
    reconstruction = ReconstructionConfig(
        parameters["cutoff"], parameters["max_iterations"], parameters["convergence_tol"],
        parameters["bin_count"], parameters["noise_aware"])
    workers = parameters["workers"]

    data = homodyne_sample(
        state, default_phases(parameters["phases"]), parameters["samples_per_phase"],
        _noise(parameters), seed=config.seed, workers=workers,
        source_description="%s cat, nu=%r" % (parameters["parity"], parameters["nu"]))

    rho, estimator = reconstruct_or_last(data, reconstruction)

    grid = GridSpec.for_amplitude(parameters["nu"], parameters["wigner_points"])
    report = negativity_report(
        rho, grid, parameters["bootstrap_resamples"], data, reconstruction,
        seed=config.seed, workers=workers)
    negativity = report.to_dict()
    if parameters["sweep"] is not None:
        sweep = identification_sweep(
            state, parameters["sweep"], parameters["phases"], parameters["samples_per_phase"],
            reconstruction, parameters["bootstrap_resamples"], grid, config.seed, workers,
            parameters["noise_kind"])
        negativity["sweep"] = sweep.to_dict()

    result = {
        "density_matrix": density_matrix_to_dict(rho),
        "converged": estimator.residual < reconstruction.convergence_tol,
        "iterations": estimator.iterations,
        "residual": estimator.residual,
        "log_likelihood": estimator.log_likelihood_history[-1],
        "fidelity_with_source": fidelity_to(state, rho),
        "config": reconstruction.to_dict(),
    }
    return [
        ("quadratures.csv", dataset_csv(data)),
        ("quadratures.json", dumps(dataset_sidecar(data))),
        ("reconstruction.json", dumps(result)),
        ("negativity.json", dumps(negativity)),
        ("wigner.csv", wigner_csv(wigner(rho, grid, check_normalization=False))),
    ]


SCENARIO_RUNNERS = {
    "interfere": run_interfere,
    "erase": run_erase,
    "cat": run_cat,
    "ghz": run_ghz,
    "eve": run_eve,
    "tomo": run_tomo,
}


def _kind(name):
    return os.path.splitext(name)[1].lstrip(".")


def run(config):
    """
    Runs ``config`` and writes the artifacts selected by ``emit`` plus the
    manifest. Computation and artifact write errors are recorded in the
    manifest.

    :returns: process exit status.
    """
    os.makedirs(config.output_dir, exist_ok=True)
    manifest = {
        "tool": "kerr-lab",
        "version": __version__,
        "scenario": config.scenario,
        "seed": config.seed,
        "config_hash": config.config_hash(),
        "resolved_config": config.to_dict(),
        "artifacts": [],
        "status": "ok",
        "error": None,
    }
    del manifest["resolved_config"]["output_dir"]

    status = EXIT_OK
    try:
        artifacts = SCENARIO_RUNNERS[config.scenario](config)
        # a failed write leaves the artifacts written before it listed
        for name, text in artifacts:
            if _kind(name) in config.emit:
                atomic_write(os.path.join(config.output_dir, name), text)
                manifest["artifacts"].append(name)
    except (KerrLabError, ArithmeticError, ValueError, OSError, MemoryError) as e:
        error = ComputeError("%s failed: %s" % (config.scenario, e))
        logger.error("%s", error)
        manifest["status"] = "error"
        manifest["error"] = {
            "type": type(error).__name__,
            "cause": type(e).__name__,
            "message": str(e),
        }
        status = EXIT_COMPUTE_ERROR

    atomic_write(os.path.join(config.output_dir, MANIFEST), dumps(manifest))
    logger.info(
        "Run %s finished with status %s; %d artifacts in %s.",
        config.scenario, manifest["status"], len(manifest["artifacts"]), config.output_dir)
    return status
