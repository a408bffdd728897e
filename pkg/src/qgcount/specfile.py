"""Loading cone / polytope description files (JSON)."""

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .cones import Cone, dual, make_cone
from .counting import polytope_cone
from .errors import QGError


class SpecError(QGError):
    pass


@dataclass(frozen=True)
class ConeSpecFile:
    name: str
    dim: int
    rays: Optional[tuple] = None
    polytope_vertices: Optional[tuple] = None
    xi: Optional[tuple] = None

    def primal_cone(self) -> Cone:
        """The cone ``C`` in ``N``.  For a polytope file this is the dual of
        ``cone(P x {1})``, so that counting in ``C^dual`` counts ``kP``."""
        if self.rays is not None:
            return make_cone(self.rays)
        return dual(polytope_cone(self.polytope_vertices))


def _vectors(raw, key, dim, where):
    if not isinstance(raw, list) or not raw:
        raise SpecError(f"{where}: '{key}' must be a nonempty list of vectors")
    out = []
    for i, v in enumerate(raw):
        if not isinstance(v, list) or len(v) != dim or not all(
            isinstance(x, int) and not isinstance(x, bool) for x in v
        ):
            raise SpecError(f"{where}: {key}[{i}] must be a list of {dim} integers")
        out.append(tuple(v))
    return tuple(out)


def parse_spec(data, where: str = "<input>") -> ConeSpecFile:
    if not isinstance(data, dict):
        raise SpecError(f"{where}: top level must be an object")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SpecError(f"{where}: 'dim' must be a positive integer")
    has_rays, has_poly = "rays" in data, "polytope_vertices" in data
    if has_rays == has_poly:
        raise SpecError(f"{where}: exactly one of 'rays' and 'polytope_vertices' is required")
    rays = _vectors(data["rays"], "rays", dim, where) if has_rays else None
    poly = _vectors(data["polytope_vertices"], "polytope_vertices", dim, where) if has_poly else None
    xi = None
    if data.get("xi") is not None:
        xi_dim = dim if has_rays else dim + 1
        xi = _vectors([data["xi"]], "xi", xi_dim, where)[0]
    name = data.get("name", "")
    if not isinstance(name, str):
        raise SpecError(f"{where}: 'name' must be a string")
    unknown = set(data) - {"name", "dim", "rays", "polytope_vertices", "xi"}
    if unknown:
        raise SpecError(f"{where}: unknown keys {sorted(unknown)}")
    return ConeSpecFile(name, dim, rays, poly, xi)


def load_spec(path) -> ConeSpecFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return parse_spec(data, str(path))


def corpus_paths() -> list:
    """Paths of the bundled corpus files, sorted by name."""
    root = resources.files("qgcount") / "corpus"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".json"))
