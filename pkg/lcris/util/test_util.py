"""
Utility functions for running the unit tests.
"""

import os


def create_config(test_path):
    """
    Function for creating a configuration file in the test folder.

    Parameters
    ----------
    test_path : str
        Folder where the unit tests are located.

    Returns
    -------
    NoneType
        None
    """

    config_file = os.path.join(test_path, "lcris_config.ini")
    database_file = os.path.join(test_path, "lcris_database.hdf5")

    with open(config_file, "w", encoding="utf-8") as config:
        config.write("[lcris]\n")
        config.write(f"database = {database_file}\n")
        config.write("n_threads = 1")


def create_scenario(scenario_file, blocks=None, **overrides):
    """
    Function for creating a small scenario file for the unit tests.
    The scenario contains a 12 x 10 triangular layout steered to
    30 deg, with a coarse frequency sweep and angle axis.

    Parameters
    ----------
    scenario_file : str
        Path of the scenario file.
    blocks : list(str), None
        Blocks that are written. All blocks are written if set
        to ``None``.
    **overrides
        Keys that replace or extend the default content, given as
        ``<block>__<key>=value`` (e.g. ``target__theta_r_deg=40``).
        A value of ``None`` removes the key.

    Returns
    -------
    NoneType
        None
    """

    content = {
        "layout": {"rows": 10, "cols": 12, "spacing_lambda0": 0.45},
        "excitation": {
            "f_design_hz": 60e9,
            "f_start_hz": 55e9,
            "f_stop_hz": 65e9,
            "n_freq": 11,
            "theta_min_deg": -89.5,
            "theta_max_deg": 89.5,
            "n_theta": 359,
        },
        "target": {"theta_r_deg": 30.0, "phi_r_deg": 0.0},
        "tolerance": {"kind": "uniform"},
        "optimizer": {"budget": 2000},
        "output": {"directory": os.path.join(os.path.dirname(scenario_file), "output")},
    }

    for key, value in overrides.items():
        block, item = key.split("__")
        content.setdefault(block, {})

        if value is None:
            content[block].pop(item, None)
        else:
            content[block][item] = value

    with open(scenario_file, "w", encoding="utf-8") as out_file:
        for block, items in content.items():
            if blocks is not None and block not in blocks:
                continue

            out_file.write(f"[{block}]\n")

            for key, value in items.items():
                out_file.write(f"{key} = {value}\n")

            out_file.write("\n")
