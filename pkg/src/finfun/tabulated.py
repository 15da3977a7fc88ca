"""Functors given by explicit tables up to a size bound.

The data file is JSON with three top-level fields:

* ``max_size``: the largest set size covered;
* ``objects``: map from size (as a string) to the list of element names;
* ``morphisms``: one record per function between sets of sizes up to the
  bound, with fields ``dom``, ``cod``, ``table`` (the function itself)
  and ``action`` (map element name -> element name).

Every function must be listed explicitly; nothing is inferred.  Loading
validates completeness and the functor laws and reports the offending
function (pair) on failure.  This is the vehicle for feeding
hypothesis-violating functors to the checkers: tables need not come from
any presentation.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .finset import FiniteFunction, FiniteSet
from .theory import FunctorInstance, SizeBoundError


class TabulatedError(Exception):
    """Base class for tabulated-functor problems."""


class TabulatedFormatError(TabulatedError):
    pass


class MissingMorphismError(TabulatedError):
    pass


class FunctorLawError(TabulatedError):
    """Tables violate F(id) = id or F(g o f) = F(g) o F(f)."""


MorphismKey = tuple[int, int, tuple[int, ...]]


@dataclass(frozen=True)
class TabulatedFunctor:
    max_size: int
    objects: tuple[tuple[str, ...], ...]
    morphisms: dict[MorphismKey, tuple[int, ...]]

    def action(self, key: MorphismKey) -> tuple[int, ...]:
        return self.morphisms[key]


def _fmt(key: MorphismKey) -> str:
    x, y, table = key
    return f"({','.join(map(str, table))}):{x}->{y}"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TabulatedFormatError(message)


def load_tabulated(text: str, name: str = "tabulated") -> TabulatedFunctor:
    """Parse and fully validate a tabulated functor."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise TabulatedFormatError(f"not valid JSON: {err}") from None
    _require(isinstance(data, dict), "top level must be an object")
    extra = set(data) - {"max_size", "objects", "morphisms"}
    _require(not extra, f"unexpected top-level field(s): {sorted(extra)}")
    _require("max_size" in data, "missing field 'max_size'")
    _require("objects" in data, "missing field 'objects'")
    _require("morphisms" in data, "missing field 'morphisms'")
    max_size = data["max_size"]
    _require(isinstance(max_size, int) and max_size >= 0,
             "'max_size' must be a non-negative integer")

    raw_objects = data["objects"]
    _require(isinstance(raw_objects, dict), "'objects' must be a map")
    objects: list[tuple[str, ...]] = []
    for k in range(max_size + 1):
        names = raw_objects.get(str(k))
        _require(names is not None, f"missing object list for size {k}")
        _require(isinstance(names, list)
                 and all(isinstance(s, str) for s in names),
                 f"object list for size {k} must be a list of strings")
        _require(len(set(names)) == len(names),
                 f"object list for size {k} has duplicate names")
        objects.append(tuple(names))
    extra_sizes = set(raw_objects) - {str(k) for k in range(max_size + 1)}
    _require(not extra_sizes,
             f"object list for out-of-range size(s): {sorted(extra_sizes)}")

    raw_morphisms = data["morphisms"]
    _require(isinstance(raw_morphisms, list), "'morphisms' must be a list")
    morphisms: dict[MorphismKey, tuple[int, ...]] = {}
    for rec in raw_morphisms:
        _require(isinstance(rec, dict), "morphism records must be objects")
        _require(set(rec) == {"dom", "cod", "table", "action"},
                 f"morphism record has fields {sorted(rec)}, expected "
                 f"dom/cod/table/action")
        dom, cod = rec["dom"], rec["cod"]
        _require(isinstance(dom, int) and 0 <= dom <= max_size,
                 f"morphism dom {dom!r} out of range")
        _require(isinstance(cod, int) and 0 <= cod <= max_size,
                 f"morphism cod {cod!r} out of range")
        table = rec["table"]
        _require(isinstance(table, list) and len(table) == dom
                 and all(isinstance(v, int) and 0 <= v < cod for v in table),
                 f"bad function table {table!r} for a map {dom}->{cod}")
        key: MorphismKey = (dom, cod, tuple(table))
        _require(key not in morphisms, f"duplicate morphism {_fmt(key)}")
        action = rec["action"]
        _require(isinstance(action, dict), "morphism 'action' must be a map")
        dom_names, cod_names = objects[dom], objects[cod]
        _require(set(action) == set(dom_names),
                 f"action of {_fmt(key)} must cover exactly the elements "
                 f"of F({dom})")
        cod_index = {s: i for i, s in enumerate(cod_names)}
        out = []
        for s in dom_names:
            target = action[s]
            _require(target in cod_index,
                     f"action of {_fmt(key)} sends {s!r} to unknown "
                     f"element {target!r}")
            out.append(cod_index[target])
        morphisms[key] = tuple(out)

    for dom in range(max_size + 1):
        for cod in range(max_size + 1):
            for table in itertools.product(range(cod), repeat=dom):
                key = (dom, cod, table)
                if key not in morphisms:
                    raise MissingMorphismError(
                        f"missing morphism table for {_fmt(key)}")

    functor = TabulatedFunctor(max_size, tuple(objects), morphisms)
    _validate_laws(functor)
    return functor


def _validate_laws(t: TabulatedFunctor) -> None:
    for n in range(t.max_size + 1):
        key = (n, n, tuple(range(n)))
        if t.action(key) != tuple(range(len(t.objects[n]))):
            raise FunctorLawError(
                f"F({_fmt(key)}) is not the identity on F({n})")
    for x in range(t.max_size + 1):
        for y in range(t.max_size + 1):
            for z in range(t.max_size + 1):
                for ft in itertools.product(range(y), repeat=x):
                    af = t.action((x, y, ft))
                    for gt in itertools.product(range(z), repeat=y):
                        ag = t.action((y, z, gt))
                        composite = tuple(gt[v] for v in ft)
                        if t.action((x, z, composite)) != tuple(
                                ag[v] for v in af):
                            raise FunctorLawError(
                                f"composition mismatch for "
                                f"f={_fmt((x, y, ft))} and "
                                f"g={_fmt((y, z, gt))}")


class TabulatedInstance(FunctorInstance):
    """A validated tabulation behind the uniform functor interface.

    Queries beyond the tabulated bound raise SizeBoundError.
    """

    def __init__(self, tabulated: TabulatedFunctor, name: str = "tabulated"):
        super().__init__(name)
        self.tabulated = tabulated

    @property
    def source(self) -> TabulatedFunctor:
        return self.tabulated

    @property
    def max_size(self) -> int:
        return self.tabulated.max_size

    def _check_size(self, n: int) -> None:
        if n > self.tabulated.max_size:
            raise SizeBoundError(
                f"{self.name} is tabulated up to size "
                f"{self.tabulated.max_size}, queried at {n}")

    def elements(self, n: int) -> tuple[str, ...]:
        self._check_size(n)
        return self.tabulated.objects[n]

    def map(self, f: FiniteFunction) -> FiniteFunction:
        self._check_size(f.dom.size)
        self._check_size(f.cod.size)
        table = self.tabulated.action((f.dom.size, f.cod.size, f.table))
        return FiniteFunction(FiniteSet(len(self.tabulated.objects[f.dom.size])),
                              FiniteSet(len(self.tabulated.objects[f.cod.size])),
                              table)


def as_instance(t: TabulatedFunctor, name: str = "tabulated") -> TabulatedInstance:
    return TabulatedInstance(t, name)


def export_tabulated(g: FunctorInstance, max_size: int) -> str:
    """Dump any instance to the data format, queried up to max_size."""
    objects = {str(n): list(g.elements(n)) for n in range(max_size + 1)}
    morphisms = []
    for dom in range(max_size + 1):
        for cod in range(max_size + 1):
            dom_names = objects[str(dom)]
            cod_names = objects[str(cod)]
            for table in itertools.product(range(cod), repeat=dom):
                action_table = g.map(
                    FiniteFunction(FiniteSet(dom), FiniteSet(cod), table)).table
                morphisms.append({
                    "dom": dom,
                    "cod": cod,
                    "table": list(table),
                    "action": {dom_names[i]: cod_names[v]
                               for i, v in enumerate(action_table)},
                })
    payload = {"max_size": max_size, "objects": objects,
               "morphisms": morphisms}
    return json.dumps(payload, indent=2, ensure_ascii=False)
