"""Scenario files: schema, loading, validation and task orchestration.

A scenario is a JSON document (schema ``qcenter-scenario/1``) describing a
symplectic space, a Lie algebra with designated invariant generators, a
hamiltonian per basis element, truncation and degree bounds, lift
requests, generator relations and a task list.  Rational scalars are
strings like ``"3/2"``; polynomials are expression strings over the
coordinate names (``q1..qn, p1..pn``), the Lie algebra labels, the
designated generator names, or the lift names, depending on the field.

Loading is split in two phases with distinct failure modes: parsing
checks document shape and expression syntax (``ParseError``), building
constructs the mathematical objects and runs their structural validation
(``ValidationError``): bracket antisymmetry and the Jacobi identity,
bivector antisymmetry and invertibility, invariance of designated
generators, hamiltonian equivariance, and the quantum condition.

Field reference (see the README for the full schema):

* ``name``, ``description``
* ``space``: ``pairs`` (required), ``weights``, ``hbar_weight``, ``bivector``
* ``lie_algebra``: ``dim``, ``labels``, ``brackets`` (list of
  ``{left, right, components: {label: scalar}}``), ``invariant_generators``
  (list of ``{name, poly, section_correction: {order: poly}}``)
* ``hamiltonians``: ``{label: coordinate polynomial}``
* ``quantum_corrections``: ``{label: {order: coordinate polynomial}}``
* ``truncation``, ``max_degree``, ``test_degree``
* ``lifts``: list of ``{name, classical}`` (a polynomial in generator
  names, carried by the section) or ``{name, target, relation: [a_0, ...]}``
  (coordinate polynomial with monic relation coefficients in generator
  names)
* ``relations``: polynomials in lift names that vanish classically
* ``center_generators``: lift names forming the candidate generator set
* ``tasks``: subset of axioms, moment, triangle, invariants, centers,
  lift, iso, weyl
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

from .action import (
    HamiltonianAction,
    check_classical_limit_triangle,
    check_quantum_moment_condition,
)
from .centers import compare_centers, invariants_up_to, moment_image_basis
from .errors import ParseError, QCenterError, ValidationError
from .liealg import InvariantGenerator, LieAlgebraData
from .lifting import (
    MonicRelation,
    build_center_iso,
    hensel_lift,
    star_evaluate,
    verify_lift,
)
from .parsing import parse_poly
from .poly import Poly, as_scalar, default_names
from .report import RunReport, TaskResult
from .sampling import sample_homogeneous_pairs, sample_polys, sample_triples
from .series import HSeries
from .space import SymplecticSpace
from .star import StarProduct, check_axioms, check_homogeneity
from .weyl import weyl_report

SCENARIO_SCHEMA = "qcenter-scenario/1"
TASK_ORDER = (
    "axioms",
    "moment",
    "triangle",
    "invariants",
    "centers",
    "lift",
    "iso",
    "weyl",
)
_SAMPLE_SEED = 0x5EED


@dataclass(frozen=True)
class LiftSpec:
    name: str
    classical_expr: str | None = None       # polynomial in generator names
    target_expr: str | None = None          # coordinate polynomial
    relation_exprs: tuple[str, ...] = ()    # coefficients in generator names


@dataclass(frozen=True)
class Scenario:
    """Parsed scenario data; mathematical objects are built separately."""

    name: str
    description: str
    pairs: int
    weights: tuple[int, ...] | None
    hbar_weight: int
    bivector: tuple[tuple[str, ...], ...] | None
    lie_dim: int
    lie_labels: tuple[str, ...]
    lie_brackets: tuple[tuple[int, int, tuple[tuple[int, str], ...]], ...]
    lie_generators: tuple[tuple[str, str, tuple[tuple[int, str], ...]], ...]
    hamiltonian_exprs: tuple[tuple[str, str], ...]
    quantum_correction_exprs: tuple[tuple[str, tuple[tuple[int, str], ...]], ...]
    truncation: int
    max_degree: int
    test_degree: int
    lifts: tuple[LiftSpec, ...]
    relation_exprs: tuple[str, ...]
    center_generators: tuple[str, ...]
    tasks: tuple[str, ...]
    axiom_samples: int = 25
    moment_samples: int = 25

    @property
    def coordinate_names(self) -> list[str]:
        return default_names(2 * self.pairs)


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise ParseError(f"missing required field {key!r} in {where}")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {key!r} in {where} has the wrong type")
    return value


def _syntax_check(expr: str, names: Sequence[str], where: str) -> str:
    try:
        parse_poly(expr, names)
    except ParseError as exc:
        raise ParseError(f"bad polynomial in {where}: {exc}") from exc
    return expr


def _scalar_check(value, where: str) -> str:
    try:
        as_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar in {where}: {value!r}") from exc
    return value


def parse_scenario(data: dict, default_name: str = "scenario") -> Scenario:
    """Document-shape and expression-syntax checks only."""
    if not isinstance(data, dict):
        raise ParseError("scenario document must be a JSON object")
    schema = data.get("schema", SCENARIO_SCHEMA)
    if schema != SCENARIO_SCHEMA:
        raise ParseError(f"unsupported scenario schema {schema!r}")
    name = data.get("name", default_name)

    space_data = _require(data, "space", dict, "scenario")
    pairs = _require(space_data, "pairs", int, "space")
    if pairs < 1:
        raise ParseError("space.pairs must be a positive integer")
    weights = space_data.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != 2 * pairs:
            raise ParseError("space.weights must list one integer per variable")
        weights = tuple(int(w) for w in weights)
    bivector = space_data.get("bivector")
    if bivector is not None:
        if not isinstance(bivector, list) or len(bivector) != 2 * pairs:
            raise ParseError("space.bivector must be a 2n x 2n matrix")
        for row in bivector:
            if not isinstance(row, list) or len(row) != 2 * pairs:
                raise ParseError("space.bivector must be a 2n x 2n matrix")
            for value in row:
                _scalar_check(value, "space.bivector")
        bivector = tuple(tuple(str(v) for v in row) for row in bivector)
    coord_names = default_names(2 * pairs)

    lie_data = _require(data, "lie_algebra", dict, "scenario")
    dim = _require(lie_data, "dim", int, "lie_algebra")
    if dim < 0:
        raise ParseError("lie_algebra.dim must be non-negative")
    labels = lie_data.get("labels") or [f"x{i+1}" for i in range(dim)]
    if not isinstance(labels, list) or len(labels) != dim:
        raise ParseError("lie_algebra.labels must list one label per element")
    index = {label: i for i, label in enumerate(labels)}
    brackets = []
    for entry in lie_data.get("brackets", []):
        left = _require(entry, "left", str, "bracket entry")
        right = _require(entry, "right", str, "bracket entry")
        comps = _require(entry, "components", dict, "bracket entry")
        if left not in index or right not in index:
            raise ParseError(f"bracket uses unknown labels {left!r}, {right!r}")
        comp_items = []
        for comp_label, value in comps.items():
            if comp_label not in index:
                raise ParseError(
                    f"unknown basis label {comp_label!r} in bracket components"
                )
            comp_items.append(
                (index[comp_label], _scalar_check(value, "bracket components"))
            )
        brackets.append((index[left], index[right], tuple(comp_items)))
    generators = []
    generator_names = []
    for entry in lie_data.get("invariant_generators", []):
        gen_name = _require(entry, "name", str, "invariant generator")
        poly_expr = _syntax_check(
            _require(entry, "poly", str, "invariant generator"),
            labels,
            f"invariant generator {gen_name!r}",
        )
        corrections = []
        for order_str, expr in sorted(entry.get("section_correction", {}).items()):
            try:
                order = int(order_str)
            except ValueError:
                raise ParseError(
                    f"section correction order {order_str!r} is not an integer"
                ) from None
            corrections.append(
                (
                    order,
                    _syntax_check(
                        expr, labels, f"section correction of {gen_name!r}"
                    ),
                )
            )
        generators.append((gen_name, poly_expr, tuple(corrections)))
        generator_names.append(gen_name)

    ham_data = _require(data, "hamiltonians", dict, "scenario")
    hamiltonian_exprs = []
    for label in labels:
        if label not in ham_data:
            raise ParseError(f"missing hamiltonian for basis element {label!r}")
        hamiltonian_exprs.append(
            (label, _syntax_check(ham_data[label], coord_names, f"hamiltonian {label!r}"))
        )
    quantum_corrections = []
    for label, corr in data.get("quantum_corrections", {}).items():
        if label not in index:
            raise ParseError(f"quantum correction for unknown label {label!r}")
        items = []
        for order_str, expr in sorted(corr.items()):
            try:
                order = int(order_str)
            except ValueError:
                raise ParseError(
                    f"quantum correction order {order_str!r} is not an integer"
                ) from None
            items.append(
                (
                    order,
                    _syntax_check(
                        expr, coord_names, f"quantum correction of {label!r}"
                    ),
                )
            )
        quantum_corrections.append((label, tuple(items)))

    lifts = []
    lift_names = []
    for entry in data.get("lifts", []):
        lift_name = _require(entry, "name", str, "lift entry")
        if "classical" in entry:
            expr = _syntax_check(
                entry["classical"], generator_names, f"lift {lift_name!r}"
            )
            lifts.append(LiftSpec(lift_name, classical_expr=expr))
        else:
            target = _syntax_check(
                _require(entry, "target", str, "lift entry"),
                coord_names,
                f"lift {lift_name!r}",
            )
            relation = _require(entry, "relation", list, "lift entry")
            if not relation:
                raise ParseError("lift relation needs at least one coefficient")
            relation = tuple(
                _syntax_check(expr, generator_names, f"lift {lift_name!r} relation")
                for expr in relation
            )
            lifts.append(
                LiftSpec(lift_name, target_expr=target, relation_exprs=relation)
            )
        lift_names.append(lift_name)

    relation_exprs = tuple(
        _syntax_check(expr, lift_names, "generator relation")
        for expr in data.get("relations", [])
    )
    for gen_name in data.get("center_generators", []):
        if gen_name not in lift_names:
            raise ParseError(
                f"center generator {gen_name!r} does not name a lift"
            )

    tasks = tuple(data.get("tasks", TASK_ORDER))
    for task in tasks:
        if task not in TASK_ORDER:
            raise ParseError(f"unknown task {task!r}")
    samples = data.get("samples", {})
    return Scenario(
        name=name,
        description=data.get("description", ""),
        pairs=pairs,
        weights=weights,
        hbar_weight=int(space_data.get("hbar_weight", 2)),
        bivector=bivector,
        lie_dim=dim,
        lie_labels=tuple(labels),
        lie_brackets=tuple(brackets),
        lie_generators=tuple(generators),
        hamiltonian_exprs=tuple(hamiltonian_exprs),
        quantum_correction_exprs=tuple(quantum_corrections),
        truncation=int(data.get("truncation", 8)),
        max_degree=int(data.get("max_degree", 8)),
        test_degree=int(data.get("test_degree", 10)),
        lifts=tuple(lifts),
        relation_exprs=relation_exprs,
        center_generators=tuple(data.get("center_generators", [])),
        tasks=tuple(task for task in TASK_ORDER if task in tasks),
        axiom_samples=int(samples.get("axioms", 25)),
        moment_samples=int(samples.get("moment", 25)),
    )


def load_scenario(path_or_preset: str) -> Scenario:
    """Load from a filesystem path or a shipped preset name."""
    path = Path(path_or_preset)
    if not path.exists():
        preset = preset_path(path_or_preset)
        if preset is None:
            raise ParseError(f"no such scenario file or preset: {path_or_preset}")
        path = preset
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc
    return parse_scenario(data, default_name=path.stem)


def list_presets() -> list[tuple[str, str]]:
    """Shipped scenario names with descriptions, sorted."""
    out = []
    base = resources.files("qcenter").joinpath("scenarios")
    for entry in sorted(base.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            data = json.loads(entry.read_text())
            out.append((entry.name[:-5], data.get("description", "")))
    return out


def preset_path(name: str) -> Path | None:
    base = resources.files("qcenter").joinpath("scenarios")
    candidate = base.joinpath(f"{name}.json")
    if candidate.is_file():
        return Path(str(candidate))
    return None


@dataclass
class BuiltScenario:
    """Scenario with all mathematical objects constructed and validated."""

    scenario: Scenario
    space: SymplecticSpace
    star: StarProduct
    action: HamiltonianAction
    pullbacks: dict[str, Poly]
    central_lifts: dict[str, HSeries]


def build_scenario(scenario: Scenario) -> BuiltScenario:
    """Construct the space, algebra and validated action.

    Raises ``ValidationError`` (or a subclass) when any mathematical
    invariant fails.
    """
    space = SymplecticSpace(
        scenario.pairs,
        bivector=scenario.bivector,
        weights=scenario.weights,
        hbar_weight=scenario.hbar_weight,
    )
    labels = list(scenario.lie_labels)
    brackets = {
        (i, j): {k: value for k, value in comps}
        for i, j, comps in scenario.lie_brackets
    }
    generators = [
        InvariantGenerator(
            gen_name,
            parse_poly(poly_expr, labels),
            tuple((order, parse_poly(expr, labels)) for order, expr in corrections),
        )
        for gen_name, poly_expr, corrections in scenario.lie_generators
    ]
    lie = LieAlgebraData(scenario.lie_dim, labels, brackets, generators)

    star = StarProduct(space, scenario.truncation)
    names = space.names
    ham_map = dict(scenario.hamiltonian_exprs)
    hams = [parse_poly(ham_map[label], names) for label in labels]
    quantum = None
    correction_map = dict(scenario.quantum_correction_exprs)
    if correction_map:
        quantum = []
        for i, label in enumerate(labels):
            series = HSeries.from_poly(hams[i], scenario.truncation)
            for order, expr in correction_map.get(label, ()):
                if order < 1:
                    raise ValidationError(
                        "quantum corrections must start at order 1"
                    )
                series = series + HSeries.from_poly(
                    parse_poly(expr, names), scenario.truncation
                ).hbar_shift(order)
            quantum.append(series)
    action = HamiltonianAction(lie, star, hams, quantum)
    pullbacks = {}
    central_lifts = {}
    for gen in lie.invariant_generators:
        pullbacks[gen.name] = action.moment_pullback(gen.poly)
        central_lifts[gen.name] = action.central_lift(gen.name)
    return BuiltScenario(scenario, space, star, action, pullbacks, central_lifts)


# -- lift assembly -----------------------------------------------------------------


def _generator_names(built: BuiltScenario) -> list[str]:
    return [gen.name for gen in built.action.lie.invariant_generators]


def _eval_generator_poly_classical(built: BuiltScenario, expr: str) -> Poly:
    gen_names = _generator_names(built)
    composed = parse_poly(expr, gen_names)
    if not gen_names:
        return Poly.constant(built.space.nvars, composed.constant_term())
    return composed.substitute([built.pullbacks[n] for n in gen_names])


def _eval_generator_poly_quantum(built: BuiltScenario, expr: str) -> HSeries:
    gen_names = _generator_names(built)
    composed = parse_poly(expr, gen_names)
    if not gen_names:
        return HSeries.from_poly(
            Poly.constant(built.space.nvars, composed.constant_term()),
            built.star.order,
        )
    lifts = [built.central_lifts[n] for n in gen_names]
    return star_evaluate(built.star, composed, lifts)


def resolve_lift(built: BuiltScenario, spec: LiftSpec
                 ) -> tuple[Poly, MonicRelation]:
    """Target polynomial and monic relation data for a lift request."""
    if spec.classical_expr is not None:
        f = _eval_generator_poly_classical(built, spec.classical_expr)
        ahat = _eval_generator_poly_quantum(built, spec.classical_expr)
        return f, MonicRelation((-f,), (-ahat,))
    f = parse_poly(spec.target_expr, built.space.names)
    coefficients = []
    quantum = []
    for expr in spec.relation_exprs:
        coefficients.append(_eval_generator_poly_classical(built, expr))
        quantum.append(_eval_generator_poly_quantum(built, expr))
    return f, MonicRelation(tuple(coefficients), tuple(quantum))


def run_lifts(built: BuiltScenario, order: int, test_elements: Sequence[Poly]
              ) -> tuple[list[tuple[str, Poly, HSeries]], list[dict]]:
    """Execute every lift request; returns entries and their verifications."""
    subalgebra = moment_image_basis(
        built.action, max(built.scenario.max_degree, built.scenario.test_degree)
    )
    entries = []
    verifications = []
    for spec in built.scenario.lifts:
        f, rel = resolve_lift(built, spec)
        rel.validate_centrality(built.action, test_elements, order)
        fhat = hensel_lift(f, rel, built.action, order, subalgebra=subalgebra)
        report = verify_lift(fhat, rel, built.action, order, test_elements)
        entries.append((spec.name, f, fhat))
        verifications.append({"name": spec.name, **report.to_json_dict()})
        if not report.passed:
            raise ValidationError(f"lift verification failed for {spec.name!r}")
    return entries, verifications


# -- task runner --------------------------------------------------------------------


def run_scenario(
    scenario: Scenario,
    truncation: int | None = None,
    max_degree: int | None = None,
) -> RunReport:
    """Execute the scenario's tasks in order and assemble the run report.

    Parse and validation failures propagate as exceptions; assertion
    failures inside tasks are recorded as failed tasks.
    """
    if truncation is not None or max_degree is not None:
        new_max = max_degree if max_degree is not None else scenario.max_degree
        scenario = replace(
            scenario,
            truncation=truncation if truncation is not None else scenario.truncation,
            max_degree=new_max,
            test_degree=max(scenario.test_degree, new_max + 2),
        )
    built = build_scenario(scenario)
    report = RunReport(
        scenario.name,
        scenario.truncation,
        scenario.max_degree,
        scenario.test_degree,
    )
    context: dict[str, Any] = {}
    for task in scenario.tasks:
        runner = _TASKS[task]
        try:
            result = runner(built, context)
        except QCenterError as exc:
            result = TaskResult(task, False, error=str(exc))
        report.tasks.append(result)
    return report


def _invariant_test_elements(built: BuiltScenario, context: dict) -> list[Poly]:
    if "invariants" not in context:
        context["invariants"] = invariants_up_to(
            built.action, built.scenario.test_degree
        )
    inv = context["invariants"]
    return [u for d in inv.degrees() for u in inv.basis(d)]


def _task_axioms(built: BuiltScenario, context: dict) -> TaskResult:
    scenario = built.scenario
    triples = sample_triples(
        _SAMPLE_SEED, built.space, scenario.axiom_samples, max_degree=4
    )
    axiom_report = check_axioms(built.star, triples)
    pairs = sample_homogeneous_pairs(
        _SAMPLE_SEED + 1, built.space, scenario.axiom_samples, max_degree=4
    )
    hom_report = check_homogeneity(built.star, pairs)
    passed = axiom_report.passed and hom_report.passed
    details = {
        "checks": len(axiom_report.entries) + len(hom_report.entries),
        "failures": axiom_report.to_json_dict()["failures"]
        + hom_report.to_json_dict()["failures"],
    }
    return TaskResult("axioms", passed, details)


def _task_moment(built: BuiltScenario, context: dict) -> TaskResult:
    samples = sample_polys(
        _SAMPLE_SEED + 2, built.space, built.scenario.moment_samples, max_degree=6
    )
    check = check_quantum_moment_condition(built.action, samples)
    return TaskResult("moment", check.passed, check.to_json_dict())


def _task_triangle(built: BuiltScenario, context: dict) -> TaskResult:
    details: dict[str, Any] = {"generators": [], "failures": []}
    passed = True
    for gen in built.action.lie.invariant_generators:
        check = check_classical_limit_triangle(built.action, gen.poly)
        details["generators"].append(gen.name)
        if not check.passed:
            passed = False
            details["failures"].extend(check.to_json_dict()["failures"])
    return TaskResult("triangle", passed, details)


def _task_invariants(built: BuiltScenario, context: dict) -> TaskResult:
    _invariant_test_elements(built, context)
    inv = context["invariants"]
    names = built.space.names
    dimensions = {
        str(d): inv.dimension(d) for d in range(built.scenario.max_degree + 1)
    }
    bases = {
        str(d): [f.to_string(names) for f in inv.basis(d)]
        for d in range(built.scenario.max_degree + 1)
    }
    return TaskResult(
        "invariants", True, {"dimensions": dimensions, "bases": bases}
    )


def _task_centers(built: BuiltScenario, context: dict) -> TaskResult:
    scenario = built.scenario
    center_report = compare_centers(
        built.action,
        scenario.max_degree,
        scenario.test_degree,
        scenario.truncation,
    )
    context["center_report"] = center_report
    return TaskResult("centers", center_report.passed, center_report.to_json_dict())


def _task_lift(built: BuiltScenario, context: dict) -> TaskResult:
    tests = _invariant_test_elements(built, context)
    entries, verifications = run_lifts(built, built.scenario.truncation, tests)
    context["lift_entries"] = entries
    return TaskResult("lift", True, {"lifts": verifications})


def _ensure_lifts(built: BuiltScenario, context: dict):
    if "lift_entries" not in context:
        tests = _invariant_test_elements(built, context)
        entries, _ = run_lifts(built, built.scenario.truncation, tests)
        context["lift_entries"] = entries


def _task_iso(built: BuiltScenario, context: dict) -> TaskResult:
    _ensure_lifts(built, context)
    entries = context["lift_entries"]
    lift_names = [name for name, _, _ in entries]
    relations = [
        (expr, parse_poly(expr, lift_names))
        for expr in built.scenario.relation_exprs
    ]
    iso = build_center_iso(
        entries, relations, built.action, built.scenario.truncation
    )
    return TaskResult("iso", iso.passed, iso.to_json_dict())


def _task_weyl(built: BuiltScenario, context: dict) -> TaskResult:
    _invariant_test_elements(built, context)
    _ensure_lifts(built, context)
    inv = context["invariants"]
    quadratic_tests = [u for d in inv.degrees() if d <= 2 for u in inv.basis(d)]
    lifted = [(name, fhat) for name, _, fhat in context["lift_entries"]]
    result = weyl_report(
        built.star, lifted, built.scenario.center_generators, quadratic_tests
    )
    return TaskResult("weyl", result.passed, result.to_json_dict())


_TASKS = {
    "axioms": _task_axioms,
    "moment": _task_moment,
    "triangle": _task_triangle,
    "invariants": _task_invariants,
    "centers": _task_centers,
    "lift": _task_lift,
    "iso": _task_iso,
    "weyl": _task_weyl,
}
