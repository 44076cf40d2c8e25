import json
import os

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib


def read_config(path):
    with open(path, 'rb') as f:
        return tomllib.load(f)


def read_payload(path):
    """
        A group or module payload: JSON, or TOML when the file ends in .toml.
    """
    if path.endswith('.toml'):
        return read_config(path)
    with open(path, 'r') as f:
        return json.load(f)


def _params(fields):
    out = []
    for x in fields:
        try:
            out.append(int(x))
        except ValueError:
            raise ValueError(f"parameter {x!r} is not an integer") from None
    return out


def parse_group_arg(arg):
    """
        "heisenberg:3" -> {"family": "heisenberg", "params": [3]}; an existing file is read as a payload.
    """
    if os.path.isfile(arg):
        spec = read_payload(arg)
        spec.setdefault("name", os.path.splitext(os.path.basename(arg))[0])
        return spec
    family, *fields = arg.strip().split(':')
    return {"family": family, "params": _params(fields), "name": arg.strip()}


def parse_module_arg(arg):
    """
        {"builtin": "regular+trivial"}, or {"dim", "generators", "name"} read from a payload file.
        Generators may be nested lists or flat row-major lists of length dim^2.
    """
    if not os.path.isfile(arg):
        return {"builtin": arg.strip()}
    spec = read_payload(arg)
    if "generators" not in spec:
        raise ValueError(f"{arg}: module payload needs a 'generators' list")
    gens = [np.asarray(g, dtype=np.int64) for g in spec["generators"]]
    if not gens:
        raise ValueError(f"{arg}: module payload has no generators")
    dim = spec.get("dim")
    if dim is None:
        dim = gens[0].shape[0] if gens[0].ndim == 2 else int(round(np.sqrt(gens[0].size)))
    try:
        gens = [g.reshape(dim, dim) for g in gens]
    except ValueError:
        raise ValueError(f"{arg}: generators are not {dim}x{dim}") from None
    return {"dim": dim, "generators": gens, "prime": spec.get("prime"),
            "name": spec.get("name", os.path.splitext(os.path.basename(arg))[0])}
