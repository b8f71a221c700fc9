"""
Module for setting up lcris in the working folder.
"""

import configparser
import os

import h5py
import lcris


class LcrisInit:
    """
    Class for initiating lcris by creating the database and
    configuration file in case they are not present in the working
    folder.
    """

    def __init__(self):
        """
        Returns
        -------
        NoneType
            None
        """

        print(f"Initiating lcris v{lcris.__version__}...", end="", flush=True)

        working_folder = os.path.abspath(os.getcwd())

        config_file = os.path.join(working_folder, "lcris_config.ini")

        print(" [DONE]")

        if not os.path.isfile(config_file):
            print("Creating lcris_config.ini...", end="", flush=True)

            with open(config_file, "w", encoding="utf-8") as file_obj:
                file_obj.write("[lcris]\n\n")

                file_obj.write("; File with the HDF5 database\n")
                file_obj.write("database = lcris_database.hdf5\n\n")

                file_obj.write("; Number of worker threads of the far-field kernel\n")
                file_obj.write("n_threads = 1\n")

            print(" [DONE]")

        config = configparser.ConfigParser()
        config.read(config_file)

        if "lcris" not in config:
            config["lcris"] = {}

            with open(config_file, "a", encoding="utf-8") as file_obj:
                file_obj.write("\n[lcris]\n")

        if "database" in config["lcris"]:
            database_file = os.path.abspath(config["lcris"]["database"])
        else:
            database_file = "lcris_database.hdf5"
            with open(config_file, "a", encoding="utf-8") as file_obj:
                file_obj.write("\n; File with the HDF5 database\n")
                file_obj.write("database = lcris_database.hdf5\n")

        if "n_threads" in config["lcris"]:
            n_threads = config["lcris"].getint("n_threads")
        else:
            n_threads = 1
            with open(config_file, "a", encoding="utf-8") as file_obj:
                file_obj.write(
                    "\n; Number of worker threads of the far-field kernel\n"
                )
                file_obj.write("n_threads = 1\n")

        print(f"Database: {database_file}")
        print(f"Working folder: {working_folder}")
        print(f"Far-field threads: {n_threads}")

        if not os.path.isfile(database_file):
            print("Creating lcris_database.hdf5...", end="", flush=True)
            h5_file = h5py.File(database_file, "w")
            h5_file.close()
            print(" [DONE]")


def get_config() -> dict:
    """
    Function for reading the settings from ``lcris_config.ini`` in
    the working folder. Defaults are returned for missing entries
    and if the file does not exist.

    Returns
    -------
    dict
        Dictionary with the ``database`` file and ``n_threads``.
    """

    config_file = os.path.join(os.getcwd(), "lcris_config.ini")

    config = configparser.ConfigParser()
    config.read(config_file)

    settings = {"database": "lcris_database.hdf5", "n_threads": 1}

    if "lcris" in config:
        if "database" in config["lcris"]:
            settings["database"] = config["lcris"]["database"]

        if "n_threads" in config["lcris"]:
            settings["n_threads"] = config["lcris"].getint("n_threads")

    return settings
