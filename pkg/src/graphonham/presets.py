"""Shipped model presets: one per regime the Monte Carlo suite reproduces."""

from __future__ import annotations

from .graphon import Graphon, load_graphon

PRESETS: dict[str, dict] = {
    # all three positive conditions hold
    "constant-0.3": {"kind": "step", "masses": ["1"], "densities": [["0.3"]]},
    # complete balanced bipartite kernel: non-narrow trap + exact even split
    "balanced-bipartite": {
        "kind": "step",
        "masses": ["1/2", "1/2"],
        "densities": [["0", "1"], ["1", "0"]],
    },
    # one side independent, the other a clique: non-narrow trap only
    "bipartite-plus-clique": {
        "kind": "step",
        "masses": ["1/2", "1/2"],
        "densities": [["0", "1"], ["1", "1"]],
    },
    # heavy independent block dominating its only neighbor: narrow trap
    "narrow-three-block": {
        "kind": "step",
        "masses": ["2/5", "3/10", "3/10"],
        "densities": [["0", "0", "1"], ["0", "1", "1"], ["1", "1", "1"]],
    },
    # two positive blocks with zero cross density: disconnected kernel
    "two-component": {
        "kind": "step",
        "masses": ["1/2", "1/2"],
        "densities": [["1/2", "0"], ["0", "1/2"]],
    },
    # a mass-1/4 block of degree zero: isolated vertices almost surely
    "isolated-block": {
        "kind": "step",
        "masses": ["1/4", "3/4"],
        "densities": [["0", "0"], ["0", "3/5"]],
    },
    # analytic family straddling the degree-tail boundary
    "power-half": {"kind": "power", "beta": "1/2"},
    "power-one": {"kind": "power", "beta": "1"},
    "power-two": {"kind": "power", "beta": "2"},
}

PRESET_NAMES = tuple(PRESETS)


def preset_payload(name: str) -> dict:
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    return PRESETS[name]


def get_preset(name: str) -> Graphon:
    return load_graphon(preset_payload(name))
