#
#  Lincense: Academic Free License (AFL) v3.0
#
"""
Emission of norm reports and suite results as JSON, CSV or HDF5.

The CSV form is a flat projection of the JSON document: one row per split
for norm reports, one row per case for suite results.
"""

import io
import csv
import sys
import json

import numpy as np
from mpi4py import MPI

from freelp.utils.autotable import AutoTable

FORMATS = ("json", "csv", "h5")


def _plain(value):
    """ Convert numpy scalars and arrays into JSON-friendly Python values. """
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def to_json(doc):
    return json.dumps(_plain(doc), indent=1) + "\n"


def csv_rows(doc):
    """ Flat rows (list of dicts) of a report document. """
    doc = _plain(doc)
    if "cases" in doc:
        return [{
            "suite": doc.get("suite"),
            "description": c["description"],
            "anchor": c.get("anchor", ""),
            "claim": c.get("claim", ""),
            "pass": c["pass"],
            "observed": json.dumps(c["observed"]),
            "expected": json.dumps(c["expected"]),
            "tol": c["tol"],
        } for c in doc["cases"]]

    if "splits" in doc:
        rows = []
        ratios = doc.get("ratios") or [None] * len(doc["splits"])
        for s, ratio in zip(doc["splits"], ratios):
            row = {
                "p": doc["p"],
                "kind": doc.get("kind"),
                "alpha": ",".join(str(k) for k in s["alpha"]),
                "norm": s["norm"],
                "T": s["T"],
                "transposed": s["transposed"],
                "value": doc["value"],
            }
            if "lp" in doc:
                row["lp"] = json.dumps(doc["lp"]["value"])
                row["ratio"] = ratio
            if "gap" in doc:
                row["gap"] = doc["gap"]
            rows.append(row)
        return rows

    return [{k: (json.dumps(v) if isinstance(v, (list, dict)) else v) for k, v in doc.items()}]


def to_csv(doc):
    rows = csv_rows(doc)
    out = io.StringIO()
    if rows:
        fields = []
        for row in rows:
            fields.extend(k for k in row if k not in fields)
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return out.getvalue()


def to_h5(doc, fname):
    """ Store the CSV rows column-wise as HDF5 tables, one row per entry. """
    with AutoTable(fname) as tbl:
        for row in csv_rows(doc):
            tbl.append_row(row)


def write_report(doc, fname=None, fmt="json", comm=MPI.COMM_WORLD):
    """ Write *doc* to *fname* (stdout if None) on rank 0.

    :param doc: JSON-like report document
    :type  doc: dict
    :param fmt: one of "json", "csv", "h5" (h5 needs a file name)
    :type  fmt: str
    """
    if fmt not in FORMATS:
        raise ValueError("Unknown report format '%s'" % fmt)
    if comm.rank != 0:
        return

    if fmt == "h5":
        if fname is None:
            raise ValueError("HDF5 reports need an output file")
        to_h5(doc, fname)
        return

    text = to_json(doc) if fmt == "json" else to_csv(doc)
    if fname is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(fname, 'w') as f:
            f.write(text)
