"""Vega-Lite chart specifications for the CSV outputs (no rendering here)."""
from __future__ import annotations

SCHEMA = "https://vega.github.io/schema/vega-lite/v5.json"


def _lines(title, data, x, fields, y_title, x_title="etaN"):
    return {
        "$schema": SCHEMA,
        "title": title,
        "data": {"url": data},
        "transform": [{"fold": fields, "as": ["curve", "value"]}],
        "mark": "line",
        "encoding": {
            "x": {"field": x, "type": "quantitative", "title": x_title},
            "y": {"field": "value", "type": "quantitative", "title": y_title},
            "color": {"field": "curve", "type": "nominal"},
        },
    }


def _points(title, data, x, fields, y_title):
    spec = _lines(title, data, x, fields, y_title, x_title=x)
    spec["mark"] = {"type": "point", "filled": False}
    return spec


def figure_specs() -> dict[str, dict]:
    """File name -> spec, keyed to the table names written by ``report-all``."""
    return {
        "fig1_gpe_bifurcation.vl.json": _lines(
            "Two-mode GPE energy per particle", "gpe_sweep.csv", "etaN",
            ["E_sym", "E_asym"], "E/N"),
        "fig2_energy_curves.vl.json": _lines(
            "Fock energies per particle", "energy_curves.csv", "etaN",
            ["E_symmetric", "E_diagonal_dual", "E_exact", "E_gpe"], "E/N"),
        "fig3_ground_pair.vl.json": _points(
            "Degenerate ground pair", "fock_states.csv", "n", ["C_even", "C_odd"], "C_n"),
        "fig4_rotated_fit.vl.json": _points(
            "Rotated states and fitted phase states", "overlay.csv", "n",
            ["psi1", "psi2", "D_plus", "D_minus"], "coefficient"),
        "fig5_cat_profiles.vl.json": _points(
            "Localised-basis profiles", "cat_profiles.csv", "m",
            ["prob_even", "prob_odd"], "|B_m|^2"),
    }
