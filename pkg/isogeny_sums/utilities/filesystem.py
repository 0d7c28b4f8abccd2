import csv
import json
import os
from typing import Any, Iterable, TextIO

from isogeny_sums.sums.models import TSV_COLUMNS, SumReport, VanishingReport


def write_tsv(reports: Iterable[SumReport], stream: TextIO) -> None:
    """
    Write reports as tab-separated rows under one header line.

    :param reports: Reports in the order they should appear
    :param stream: Open text stream
    :return: None
    """
    writer = csv.writer(stream, delimiter="\t", lineterminator="\n")
    writer.writerow(TSV_COLUMNS)
    for report in reports:
        writer.writerow(report.tsv_row())


def save_reports(
    reports: list[SumReport] | list[VanishingReport], output_path: str
) -> None:
    """
    Save reports as JSON or TSV, chosen by the file extension.

    :param reports: Reports to save
    :param output_path: Target file ending in .json or .tsv
    :return: None
    """
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    if output_path.endswith(".json"):
        with open(output_path, "w", encoding="utf-8") as f:
            json.dump([report.to_dict() for report in reports], f, indent=2)
    elif output_path.endswith(".tsv"):
        with open(output_path, "w", newline="", encoding="utf-8") as f:
            write_tsv(reports, f)  # type: ignore[arg-type]
    else:
        raise ValueError(f"unsupported report format: {output_path}")


def load_reports(path: str) -> list[SumReport]:
    """
    Load SumReports saved as JSON.

    :param path: Path to the JSON file
    :return: List of reports
    """
    with open(path, "r", encoding="utf-8") as f:
        data: list[dict[str, Any]] = json.load(f)
    return [SumReport.from_dict(report) for report in data]
