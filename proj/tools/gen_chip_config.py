#!/usr/bin/env python3
"""Writes data/chip.json: a 28-pad leadframe package with 12 copper bonding
wires arranged in 6 antiparallel pairs.

Only the pad dimensions, wire diameter, materials, drive and boundary data
are known. The following layout choices are guesses:

  * package 5.5 x 5.5 x 0.4 mm, pads on the bottom 0.15 mm
  * 7 pads per side on a 0.5 mm pitch, centred on each side
  * the 4 long pads sit pairwise in the middle of the south and north sides
  * chip 1.68 x 1.68 x 0.25 mm, resting on the bottom face, shifted 0.1 mm
    south so that the south long-pad wires are the shortest
  * wires land on the pad centre line 0.1555 mm from the pad's inner end and
    on the chip top 0.215 mm inside its edge (mean wire length 1.55 mm
    at delta = 0.17), fanned towards the chip centre
  * unwired pads alternate between +20 mV and -20 mV
"""

import json
import math
import pathlib

SIZE = 5.5
HEIGHT = 0.4
PAD_T = 0.15
PAD_W = 0.311
PAD_L = 1.01
PAD_L_LONG = 1.261
PITCH = 0.5
CHIP = 1.68
CHIP_T = 0.25
CHIP_SHIFT_SOUTH = 0.1
CHIP_INSET = 0.215
FAN = 0.35
V = 0.020

SIDES = ("south", "east", "north", "west")
LONG = {("south", 2), ("south", 3), ("north", 3), ("north", 4)}
# (side, pad index) pairs carrying a wire; consecutive entries form a pair
WIRED = [
    ("south", 2), ("south", 3),
    ("south", 5), ("south", 6),
    ("north", 3), ("north", 4),
    ("north", 0), ("north", 1),
    ("east", 2), ("east", 3),
    ("west", 3), ("west", 4),
]

centre = SIZE / 2
chip_c = (centre, centre - CHIP_SHIFT_SOUTH)
chip_lo = (chip_c[0] - CHIP / 2, chip_c[1] - CHIP / 2)
chip_hi = (chip_c[0] + CHIP / 2, chip_c[1] + CHIP / 2)


def r(v):
    return round(v, 6)


def pad_geometry(side, k):
    """Box (mm), inner-end centre and PEC face box of pad k on a side."""
    along = centre + (k - 3) * PITCH
    length = PAD_L_LONG if (side, k) in LONG else PAD_L
    lo_a, hi_a = along - PAD_W / 2, along + PAD_W / 2
    if side == "south":
        box = ([lo_a, 0, 0], [hi_a, length, PAD_T])
        land = [along, length - PAD_W / 2, PAD_T]
        pec = ([lo_a, 0, 0], [hi_a, 0, PAD_T])
    elif side == "north":
        box = ([lo_a, SIZE - length, 0], [hi_a, SIZE, PAD_T])
        land = [along, SIZE - length + PAD_W / 2, PAD_T]
        pec = ([lo_a, SIZE, 0], [hi_a, SIZE, PAD_T])
    elif side == "west":
        box = ([0, lo_a, 0], [length, hi_a, PAD_T])
        land = [length - PAD_W / 2, along, PAD_T]
        pec = ([0, lo_a, 0], [0, hi_a, PAD_T])
    else:
        box = ([SIZE - length, lo_a, 0], [SIZE, hi_a, PAD_T])
        land = [SIZE - length + PAD_W / 2, along, PAD_T]
        pec = ([SIZE, lo_a, 0], [SIZE, hi_a, PAD_T])
    return box, land, pec


def chip_landing(side, along):
    if side in ("south", "north"):
        x = chip_c[0] + FAN * (along - chip_c[0])
        y = chip_lo[1] + CHIP_INSET if side == "south" else chip_hi[1] - CHIP_INSET
        return [x, y, CHIP_T]
    y = chip_c[1] + FAN * (along - chip_c[1])
    x = chip_lo[0] + CHIP_INSET if side == "west" else chip_hi[0] - CHIP_INSET
    return [x, y, CHIP_T]


def main():
    boxes = [{"name": "chip", "material": "copper",
              "min_mm": [r(chip_lo[0]), r(chip_lo[1]), 0.0],
              "max_mm": [r(chip_hi[0]), r(chip_hi[1]), CHIP_T]}]
    contacts = []
    wires = []
    wired = {p: i for i, p in enumerate(WIRED)}
    unwired_sign = 1
    for side in SIDES:
        for k in range(7):
            box, land, pec = pad_geometry(side, k)
            name = f"{side}{k}"
            boxes.append({"name": "pad_" + name, "material": "copper",
                          "min_mm": [r(v) for v in box[0]], "max_mm": [r(v) for v in box[1]]})
            if (side, k) in wired:
                i = wired[(side, k)]
                potential = V if i % 2 == 0 else -V
                along = land[0] if side in ("south", "north") else land[1]
                chip = chip_landing(side, along)
                wires.append((i, {"id": f"w{i + 1:02d}", "pad_mm": [r(v) for v in land],
                                  "chip_mm": [r(v) for v in chip], "diameter_mm": 0.0254,
                                  "material": "copper"}))
            else:
                potential = V * unwired_sign
                unwired_sign = -unwired_sign
            contacts.append({"name": "pec_" + name, "min_mm": [r(v) for v in pec[0]],
                             "max_mm": [r(v) for v in pec[1]], "potential": potential})
    wires = [w for _, w in sorted(wires, key=lambda t: t[0])]

    dists = [math.dist(w["pad_mm"], w["chip_mm"]) for w in wires]
    mean_d = sum(dists) / len(dists)

    doc = {
        "grid": {
            "x_mm": {"breaks": [0.0, SIZE], "max_step": 0.15},
            "y_mm": {"breaks": [0.0, SIZE], "max_step": 0.15},
            "z_mm": {"breaks": [0.0, HEIGHT], "max_step": 0.1},
            "auto_breaks": True,
            "snap_tolerance_mm": 1e-6,
        },
        "materials": [
            {"name": "epoxy", "sigma": 1e-6, "lambda": 0.87, "rho_c": 1.6e6},
            {"name": "copper", "sigma": 5.8e7, "lambda": 398.0, "rho_c": 3.45e6,
             "alpha_sigma": 3.9e-3, "alpha_lambda": 0.0, "t_ref": 300.0},
        ],
        "regions": {"background": "epoxy", "boxes": boxes},
        "wires": wires,
        "contacts": contacts,
        "boundary": {"h": 25.0, "emissivity": 0.2475, "ambient": 300.0},
        "time": {"end": 50.0, "steps": 50},
        "uq": {"samples_file": "elongation_samples.txt", "lo": 0.0, "hi": 0.9,
               "samples": 1000, "seed": 1, "t_critical": 523.0, "k_sigma": 6.0},
        "output": {"directory": "output", "vtk": True, "vtk_every": 10},
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "chip.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {out}: {len(wires)} wires, {len(contacts)} contacts, "
          f"mean direct distance {mean_d:.4f} mm -> mean length {mean_d / (1 - 0.17):.4f} mm at delta=0.17")
    for w, d in zip(wires, dists):
        print(f"  {w['id']}: d = {d:.4f} mm")


if __name__ == "__main__":
    main()
