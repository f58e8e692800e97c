#!/usr/bin/env python3
"""Generate the bench-configuration curves as plot-ready CSV tables.

Writes frequency responses (DSB notch, SSB/PM flat passbands), SNR sweeps
versus modulation index and passband frequency, passband shapes, and noise
figure curves for the 10 GHz reference operating point.
"""

import argparse
import csv
import math
import os

import numpy as np

from ibosmpf import (
    frequency_response_sweep,
    noise_figure,
    passband_shape,
    reference_link,
    signal_power_ssb,
    snr_ssb,
)
from ibosmpf.pm import snr_pm
from ibosmpf.units import dbm_to_watts


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def response_curves(outdir):
    grid = np.linspace(2e9, 16e9, 1401)
    for kind, gamma in (("dsb", 0.39), ("ssb", 0.39), ("pm", 0.41)):
        link = reference_link(scheme_kind=kind, gamma=gamma).with_delay_for_center(4e9)
        db = frequency_response_sweep(link, grid)
        write_csv(
            os.path.join(outdir, f"response_{kind}.csv"),
            ["f_m_hz", "signal_power_db"],
            list(zip(grid, db)),
        )


def passband_peaks(outdir):
    rows = []
    for f_c in np.linspace(4e9, 16e9, 13):
        link = reference_link().with_delay_for_center(f_c)
        rows.append((f_c, 10 * math.log10(signal_power_ssb(link, f_c)),
                     10 * math.log10(signal_power_ssb(link, flat=True))))
    write_csv(
        os.path.join(outdir, "ssb_passband_peaks.csv"),
        ["f_c_hz", "peak_db_exact", "peak_db_flat"],
        rows,
    )


def snr_vs_gamma(outdir):
    p_in = dbm_to_watts(6.0)
    for kind, snr_fn in (("ssb", snr_ssb), ("pm", snr_pm)):
        rows = []
        for gamma in np.linspace(0.05, 0.8, 31):
            report = snr_fn(reference_link(scheme_kind=kind, gamma=gamma))
            rows.append(
                (
                    gamma,
                    report.snr_db_hz,
                    report.snr_approx_db_hz,
                    noise_figure(p_in, report.snr_db_hz),
                )
            )
        write_csv(
            os.path.join(outdir, f"snr_vs_gamma_{kind}.csv"),
            ["gamma", "snr_exact_dbhz", "snr_approx_dbhz", "nf_db"],
            rows,
        )


def snr_vs_frequency(outdir):
    for kind, gamma, snr_fn in (("ssb", 0.44, snr_ssb), ("pm", 0.41, snr_pm)):
        rows = []
        for f_c in np.linspace(4e9, 16e9, 121):
            link = reference_link(scheme_kind=kind, gamma=gamma).with_delay_for_center(f_c)
            report = snr_fn(link)
            rows.append((f_c, report.snr_db_hz, report.snr_approx_db_hz))
        write_csv(
            os.path.join(outdir, f"snr_vs_frequency_{kind}.csv"),
            ["f_c_hz", "snr_exact_dbhz", "snr_approx_dbhz"],
            rows,
        )


def passband_shapes(outdir):
    rows = []
    detunings = np.linspace(-0.5e9, 0.5e9, 401)
    links = {nm: reference_link(bandwidth_nm=nm) for nm in (3.2, 6.4)}
    for det in detunings:
        rows.append(
            (det,)
            + tuple(10 * np.log10(max(passband_shape(links[nm], det), 1e-30)) for nm in (3.2, 6.4))
        )
    write_csv(
        os.path.join(outdir, "passband_shapes.csv"),
        ["detuning_hz", "shape_db_3p2nm", "shape_db_6p4nm"],
        rows,
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="output directory")
    args = parser.parse_args()
    os.makedirs(args.outdir, exist_ok=True)
    response_curves(args.outdir)
    passband_peaks(args.outdir)
    snr_vs_gamma(args.outdir)
    snr_vs_frequency(args.outdir)
    passband_shapes(args.outdir)


if __name__ == "__main__":
    main()
