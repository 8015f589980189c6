"""Layer colors and node encodings for the three skip-link schemes.

Each layer gets a fixed chromaticity (hue, saturation) from a hand-picked
15-entry palette. Within a layer, the color-only scheme varies node
brightness from 1.0 down to a 0.35 floor; the mixed scheme keeps brightness
constant and numbers nodes; the text-only scheme drops color entirely and
identifies nodes by a layer letter plus a number.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from enum import Enum

from .model import LayeredGraph


class SkipDepiction(str, Enum):
    """How skip-link destinations are encoded in a quilt."""

    COLOR_ONLY = "quilt-color"
    MIXED = "quilt-mixed"
    TEXT_ONLY = "quilt-text"


class TooManyLayers(ValueError):
    """More layers than the palette (or the letter alphabet) can encode."""


# Hand-tuned hue/saturation pairs; hues are spread unevenly to keep
# neighbouring entries distinguishable once brightness varies on top.
PALETTE: tuple[tuple[float, float], ...] = (
    (0.000, 0.88),  # red
    (0.062, 0.92),  # orange
    (0.118, 0.95),  # amber
    (0.172, 0.90),  # yellow-green
    (0.285, 0.80),  # green
    (0.372, 0.72),  # sea green
    (0.462, 0.78),  # teal
    (0.528, 0.82),  # cyan
    (0.585, 0.85),  # azure
    (0.640, 0.88),  # blue
    (0.705, 0.75),  # violet
    (0.775, 0.70),  # purple
    (0.838, 0.78),  # magenta
    (0.905, 0.72),  # pink
    (0.958, 0.60),  # rose
)

LAYER_LETTERS = "ABCDEFGHIJKLMNO"
BRIGHTNESS_FLOOR = 0.35
MIXED_BRIGHTNESS = 0.90
TEXT_CELL_FILL = "#e2e2e2"


def hsb_to_hex(hue: float, saturation: float, brightness: float) -> str:
    """Fixed HSB -> 8-bit hex conversion used everywhere colors are emitted."""
    r, g, b = colorsys.hsv_to_rgb(hue % 1.0, saturation, brightness)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def blend_toward_white(hex_color: str, amount: float) -> str:
    """Lighten a hex color by linear blending toward white (amount in 0..1)."""
    r = int(hex_color[1:3], 16)
    g = int(hex_color[3:5], 16)
    b = int(hex_color[5:7], 16)
    mix = lambda v: round(v + (255 - v) * amount)
    return "#{:02x}{:02x}{:02x}".format(mix(r), mix(g), mix(b))


@dataclass(frozen=True)
class ColorMap:
    """Node and layer encodings for one graph under one skip scheme."""

    style: SkipDepiction
    layer_count: int
    layer_sizes: tuple[int, ...]

    def layer_chroma(self, layer: int) -> tuple[float, float]:
        return PALETTE[layer - 1]

    def layer_letter(self, layer: int) -> str:
        return LAYER_LETTERS[layer - 1]

    def node_brightness(self, layer: int, index: int) -> float:
        """Brightness of the index-th node (0-based) of a layer.

        Color-only: linear ramp 1.0 down to BRIGHTNESS_FLOOR. Mixed: constant.
        Text-only cells carry no chromatic encoding; the value is unused.
        """
        if self.style is not SkipDepiction.COLOR_ONLY:
            return MIXED_BRIGHTNESS
        size = self.layer_sizes[layer - 1]
        if size <= 1:
            return 1.0
        return 1.0 - (1.0 - BRIGHTNESS_FLOOR) * (index / (size - 1))

    def node_label(self, layer: int, index: int) -> str | None:
        """Visible node label, or None in the color-only scheme."""
        if self.style is SkipDepiction.COLOR_ONLY:
            return None
        number = str(index + 1)
        if self.style is SkipDepiction.MIXED:
            return number
        return f"{self.layer_letter(layer)}{number}"

    def cell_fill(self, layer: int, index: int) -> str:
        """Fill color of a node's own cell (also used for its skip cells)."""
        if self.style is SkipDepiction.TEXT_ONLY:
            return TEXT_CELL_FILL
        hue, sat = self.layer_chroma(layer)
        return hsb_to_hex(hue, sat, self.node_brightness(layer, index))

    def layer_fill(self, layer: int) -> str:
        """Layer-identifying fill at the constant mixed brightness."""
        if self.style is SkipDepiction.TEXT_ONLY:
            return TEXT_CELL_FILL
        hue, sat = self.layer_chroma(layer)
        return hsb_to_hex(hue, sat, MIXED_BRIGHTNESS)


def assign_colors(g: LayeredGraph, style: SkipDepiction) -> ColorMap:
    """Build the color map for a graph; layers beyond the palette are an error."""
    if g.layer_count > len(PALETTE):
        raise TooManyLayers(f"{g.layer_count} layers exceed the {len(PALETTE)}-entry palette")
    return ColorMap(style=style, layer_count=g.layer_count, layer_sizes=g.layer_sizes())
