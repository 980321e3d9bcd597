from planted_lab.cli.lab_config import LabConfig, parse_config, parse_override
from planted_lab.cli.emit import OutputFormat, emit, render, curve_frame, table_frame, read_curve_csv
from planted_lab.cli.instance_io import read_instance, write_instance

__all__ = [
    "LabConfig", "parse_config", "parse_override",
    "OutputFormat", "emit", "render", "curve_frame", "table_frame", "read_curve_csv",
    "read_instance", "write_instance",
]
