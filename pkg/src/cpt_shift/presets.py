"""
Named run configurations for the standard parameter sets (fig2 ... fig7b).

Every preset is a ``key = value`` block in the same format the command line
reads from ``--config``; values given in a config file override the preset.
"""
from __future__ import annotations

PRESETS = {
    "fig2": ("spectrum", """
        # weak coupling line shape, Omega_1 = 3 Omega_2
        omega_34 = 10
        intensity = 1e-4
        ratio = 9
        p_1 = 1
        p_2 = -1
        delta = linspace(-5, 5, 201)
        delta_unit = gamma_d
        weak_columns = true
        path = exact
    """),
    "fig3": ("shift-map", """
        omega_34 = 10
        intensity = 1e-4
        ratio = 9
        p_1 = -1, -0.5, 0, 0.5, 1
        p_2 = linspace(-1, 1, 41)
        path = rational
    """),
    "fig4a": ("spectrum", """
        omega_34 = 10, 1, 0.5, 0.1
        intensity = 0.1
        ratio = 10
        p_1 = 1
        p_2 = 1
        delta = linspace(-10, 10, 201)
        delta_unit = gamma_d
        path = exact
    """),
    "fig4b": ("spectrum", """
        omega_34 = 10, 1, 0.5, 0.1
        intensity = 0.1
        ratio = 10
        p_1 = -1
        p_2 = 1
        delta = linspace(-10, 10, 201)
        delta_unit = gamma_d
        path = exact
    """),
    "fig5": ("shift-map", """
        omega_34 = 0.5
        intensity = 1e-4
        ratio = 1
        p_1 = 0.5, 1, 1.5, 2
        p_2 = linspace(0.1, 10, 100)
        path = rational
    """),
    "fig6a": ("ratio-map", """
        omega_34 = 2
        ratio = 2
        p_1 = linspace(-1, 1, 21)
        p_2 = linspace(-1, 1, 21)
        x_grid = 2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3
        path = rational
    """),
    "fig6b": ("ratio-map", """
        omega_34 = 0.2
        ratio = 2
        p_1 = linspace(-1, 1, 21)
        p_2 = linspace(-1, 1, 21)
        x_grid = 2.5e-4, 5e-4, 1e-3, 2e-3, 4e-3
        path = rational
    """),
    "fig7a": ("shift-vs-x", """
        omega_34 = 1
        p_1 = 1
        p_2 = -1
        ratio = 0.5, 0.8, 1, 1.25, 2
        x_grid = linspace(0.005, 0.2, 40)
        path = rational
    """),
    "fig7b": ("shift-vs-x", """
        # approach to the cancellation ratio rabi_1**2 / rabi_2**2 = -p_2 / p_1
        omega_34 = 1
        p_1 = 1
        p_2 = -0.5
        ratio = 0.51, 0.52, 0.53, 0.55, 0.57, 0.6
        x_grid = linspace(0.005, 0.2, 40)
        path = rational
    """),
}


def preset_text(name: str) -> str:
    return PRESETS[name][1]


def preset_command(name: str) -> str:
    return PRESETS[name][0]
