"""Command-line front end: one subcommand per reproducible claim.

Subcommands: stab-identity, stab, link, explore, verify, witness, tube,
presentation-export.  Each run prints one ClaimResult (text or JSON) and
exits 0 iff every executed claim passed.  JSON output uses sorted keys and
default float formatting, so parse-then-reserialize is byte identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import NamedTuple

from . import __version__
from .arith import check_prime, parse_laurent
from .rep import (MatrixRF, is_homothety, letter_matrix, named_matrix,
                  order_mod_homothety, parse_word, word_evaluate,
                  word_evaluate_integral, named_word)
from .building import (VertexClass, canonicalize, identity_vertex,
                       is_adjacent, link, link_dot)
from .groupcalc import (IDENTITY_STAB_PRIME_BOUND, RELATION_FAMILIES,
                        kernel_witness_check, orbit_classify,
                        stab_exact, stab_identity_exact, stab_words,
                        tube_pattern_check, verify_relations)

CACHE_ENV = "BURAUBUILDING_CACHE_DIR"
DEFAULT_SEED = 20240601

IDENTITY_IMAGE_ORDERS = {2: 4, 3: 4, 5: 4, 7: 8, 11: 12}


class RunConfig(NamedTuple):
    prime: int
    radius: int
    word_depth: int
    digit_bound: int
    budget_nodes: int
    cache_dir: str
    output_format: str      # text | json | dot
    seed: int
    jobs: int


class ClaimResult(NamedTuple):
    claim_id: str
    status: str             # pass | fail | partial
    data: object
    elapsed: float

    def to_json_dict(self):
        return {
            "claimId": self.claim_id,
            "data": self.data,
            "elapsed": self.elapsed,
            "status": self.status,
        }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# configuration

def _read_config_file(path):
    out = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError("config line without '=': %r" % line)
            k, v = line.split("=", 1)
            out[k.strip()] = v.strip()
    return out

_CONFIG_KEYS = {
    "prime": int, "radius": int, "wordDepth": int, "digitBound": int,
    "budgetNodes": int, "cacheDir": str, "outputFormat": str,
    "seed": int, "jobs": int,
}


def build_config(args) -> RunConfig:
    """Flags win over the optional key=value config file, which wins over defaults."""
    base = {
        "prime": 3, "radius": 1, "wordDepth": 3, "digitBound": 8,
        "budgetNodes": 200_000, "cacheDir": "", "outputFormat": "text",
        "seed": DEFAULT_SEED, "jobs": 1,
    }
    if getattr(args, "config", None):
        for k, v in _read_config_file(args.config).items():
            if k not in _CONFIG_KEYS:
                raise ValueError("unknown config key %r" % k)
            base[k] = _CONFIG_KEYS[k](v)
    flagmap = {
        "prime": "p", "radius": "radius", "wordDepth": "depth",
        "digitBound": "digit_bound", "budgetNodes": "budget",
        "cacheDir": "cache_dir", "seed": "seed", "jobs": "jobs",
    }
    for key, attr in flagmap.items():
        v = getattr(args, attr, None)
        if v is not None:
            base[key] = v
    if getattr(args, "json", False):
        base["outputFormat"] = "json"
    if getattr(args, "dot", False):
        base["outputFormat"] = "dot"
    cache = base["cacheDir"] or os.environ.get(CACHE_ENV) \
        or os.path.join(os.path.expanduser("~"), ".cache", "buraubuilding")
    for k in ("radius", "wordDepth", "digitBound", "budgetNodes", "jobs"):
        if base[k] < 1:
            raise ValueError("%s must be positive" % k)
    return RunConfig(prime=base["prime"], radius=base["radius"],
                     word_depth=base["wordDepth"], digit_bound=base["digitBound"],
                     budget_nodes=base["budgetNodes"], cache_dir=cache,
                     output_format=base["outputFormat"], seed=base["seed"],
                     jobs=base["jobs"])


# ---------------------------------------------------------------------------
# the orbit cache

def _cache_path(config, key_parts):
    digest = hashlib.sha256("|".join(key_parts).encode()).hexdigest()[:24]
    return os.path.join(config.cache_dir, digest + ".json")


def cache_get(config, key_parts):
    path = _cache_path(config, key_parts)
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def cache_put(config, key_parts, payload):
    os.makedirs(config.cache_dir, exist_ok=True)
    path = _cache_path(config, key_parts)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(payload))


# ---------------------------------------------------------------------------
# vertex spec grammar: a word over named generators applied to I, or a
# literal matrix [[...],[...],[...]] with entries in the c*t^k grammar

def parse_vertex_spec(text: str, p: int) -> VertexClass:
    text = text.strip()
    if text == "I":
        return identity_vertex(p)
    if text.startswith("["):
        rows = _matrix_literal(text)
        m = MatrixRF(p, tuple(
            tuple(parse_laurent(str(e), p, "t").to_ratfunc() for e in row)
            for row in rows))
        return canonicalize(m)
    return canonicalize(word_evaluate(parse_word(text), p))


def _matrix_literal(text):
    body = text.strip()
    if not (body.startswith("[[") and body.endswith("]]")):
        raise ValueError("matrix literal must look like [[a,b,c],[d,e,f],[g,h,i]]")
    rows = body[2:-2].split("],[")
    out = [[e.strip() for e in r.split(",")] for r in rows]
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("matrix literal must be 3x3")
    return out


# ---------------------------------------------------------------------------
# claim commands

def cmd_stab_identity(config: RunConfig) -> ClaimResult:
    p = check_prime(config.prime)
    if p > IDENTITY_STAB_PRIME_BOUND:
        raise ValueError("identity stabilizer enumeration supports p <= %d"
                         % IDENTITY_STAB_PRIME_BOUND)
    t0 = time.time()
    rpt = stab_identity_exact(p)
    expected = IDENTITY_IMAGE_ORDERS.get(p)
    status = "partial" if expected is None else \
        ("pass" if rpt.image_order == expected else "fail")
    data = rpt.to_json_dict()
    data["expectedImageOrder"] = expected
    return ClaimResult("stab-identity-p%d" % p, status, data, time.time() - t0)


def cmd_stab(config: RunConfig, spec: str, method: str, gens) -> ClaimResult:
    p = check_prime(config.prime)
    v = parse_vertex_spec(spec, p)
    t0 = time.time()
    if method == "exact":
        rpt = stab_exact(v, digit_bound=config.digit_bound,
                         column_budget=config.budget_nodes * 20)
    else:
        rpt = stab_words(v, tuple(gens), config.word_depth)
    data = rpt.to_json_dict()
    status = "pass" if rpt.complete else "partial"
    return ClaimResult("stab-%s-p%d" % (method, p), status, data,
                       time.time() - t0)


def cmd_link(config: RunConfig, spec: str) -> ClaimResult:
    p = check_prime(config.prime)
    v = parse_vertex_spec(spec, p)
    t0 = time.time()
    lk = link(v)
    expected = 2 * (p * p + p + 1)
    degrees = []
    if p == 3:
        for i in range(len(lk)):
            degrees.append(sum(1 for j in range(len(lk)) if i != j
                               and is_adjacent(lk[i].vclass, lk[j].vclass)))
    ok = len(lk) == expected and len(set(lv.vclass for lv in lk)) == expected \
        and (p != 3 or all(d == 4 for d in degrees))
    data = {
        "count": len(lk),
        "expectedCount": expected,
        "vertex": v.to_text(),
        "withinLinkDegrees": sorted(set(degrees)) if degrees else None,
    }
    result = ClaimResult("link-count-p%d" % p, "pass" if ok else "fail",
                         data, time.time() - t0)
    if config.output_format == "dot":
        sys.stdout.write(link_dot(v))
    return result


def cmd_explore(config: RunConfig, gens) -> ClaimResult:
    p = check_prime(config.prime)
    if p != 3:
        # u and the distinguished vertices are defined at p = 3 only
        gens = [g for g in gens if g != "u"]
    t0 = time.time()
    key = ["explore", __version__, str(p), ".".join(gens), str(config.radius),
           str(config.budget_nodes)]
    cached = cache_get(config, key)
    if cached is not None:
        data = cached
    else:
        table = orbit_classify(p, gens=tuple(gens), radius=config.radius,
                               budget=config.budget_nodes,
                               stab_reports=(p == 3))
        data = table.to_json_dict()
        cache_put(config, key, data)
    status = "pass"
    if p == 3:
        # the radius-1 ball is [I] plus its link; 18 of the 26 link
        # vertices must be group points
        groups = [o for o in data["orbits"] if o["label"] == "group-point"]
        if not groups or (config.radius == 1
                          and groups[0]["sizeWithinRadius"] != 19):
            status = "fail"
        elif groups[0]["sizeWithinRadius"] < 19:
            status = "fail"
        if config.radius == 1 and groups:
            data["groupPointsInLink"] = groups[0]["sizeWithinRadius"] - 1
    if not data["complete"]:
        status = "partial"
    return ClaimResult("explore-p%d-r%d" % (p, config.radius), status, data,
                       time.time() - t0)


def cmd_verify(config: RunConfig) -> ClaimResult:
    if config.prime != 3:
        raise ValueError("the relation list involves u, defined at p = 3 only")
    t0 = time.time()
    reports = verify_relations(3)
    ok = all(r.holds_mod_p for r in reports) and \
        all(r.holds_integrally for r in reports if r.holds_integrally is not None)
    data = {"relations": [r.to_json_dict() for r in reports]}
    return ClaimResult("relations-p3", "pass" if ok else "fail", data,
                       time.time() - t0)


def cmd_witness(config: RunConfig, mod_only: bool, integral_only: bool) -> ClaimResult:
    t0 = time.time()
    word = named_word("kernel_word")
    data = {"letters": len(word)}
    ok = True
    if not integral_only:
        m3 = word_evaluate(word, 3)
        hom = is_homothety(m3) is not None
        data["homothetyMod3"] = hom
        ok = ok and hom
    if not mod_only:
        mi = word_evaluate_integral(word)
        hom_i = is_homothety(mi) is not None
        data["homothetyIntegral"] = hom_i
        data["integralEntryDegrees"] = [
            [mi[i, j].maxexp if not mi[i, j].is_zero() else None
             for j in range(3)] for i in range(3)]
        ok = ok and not hom_i
    return ClaimResult("kernel-witness", "pass" if ok else "fail", data,
                       time.time() - t0)


def cmd_tube(config: RunConfig, kmax: int) -> ClaimResult:
    if config.prime != 3:
        raise ValueError("the tube chain is defined at p = 3 only")
    t0 = time.time()
    levels = tube_pattern_check(kmax=kmax, depth=config.word_depth, p=3)
    ok = all(lv.image_order == (18 if lv.k == 1 else 54) for lv in levels)
    data = {"levels": [lv.to_json_dict() for lv in levels]}
    return ClaimResult("tube-k%d" % kmax, "pass" if ok else "fail", data,
                       time.time() - t0)


def cmd_presentation_export(config: RunConfig) -> ClaimResult:
    if config.prime != 3:
        raise ValueError("the presentation data is defined at p = 3 only")
    t0 = time.time()
    gens = {}
    for name in ("x", "y", "u", "h"):
        m = letter_matrix(name, 3)
        gens[name] = {
            "matrix": [[str(m[i, j].to_laurent()) for j in range(3)]
                       for i in range(3)],
            "orderModHomothety": order_mod_homothety(m),
        }
    data = {
        "generators": gens,
        "relators": [{"name": name, "word": text}
                     for name, text, _ in RELATION_FAMILIES],
    }
    return ClaimResult("presentation-export", "pass", data, time.time() - t0)


# ---------------------------------------------------------------------------
# rendering

def _render_text(result: ClaimResult):
    lines = ["claim %s: %s (%.2fs)" % (result.claim_id, result.status,
                                       result.elapsed)]
    def emit(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                emit(prefix + "  " + str(k) + ":", obj[k])
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, e in enumerate(obj):
                emit(prefix + " [%d]" % i, e)
        else:
            lines.append("%s %s" % (prefix, obj))
    emit(" ", result.data)
    return "\n".join(lines) + "\n"


def emit_result(config: RunConfig, result: ClaimResult):
    if config.output_format == "json":
        sys.stdout.write(dumps(result.to_json_dict()))
    else:
        sys.stdout.write(_render_text(result))


# ---------------------------------------------------------------------------
# argument parsing

def _add_common(sp):
    sp.add_argument("--p", type=int, default=None, help="prime modulus")
    sp.add_argument("--config", default=None, help="key=value config file")
    sp.add_argument("--cache-dir", dest="cache_dir", default=None)
    sp.add_argument("--radius", type=int, default=None)
    sp.add_argument("--depth", type=int, default=None, help="word-search depth")
    sp.add_argument("--digit-bound", dest="digit_bound", type=int, default=None)
    sp.add_argument("--budget", type=int, default=None, help="node budget")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=None, help="worker cap")
    sp.add_argument("--json", action="store_true", help="JSON output")


def make_parser():
    ap = argparse.ArgumentParser(
        prog="buraubuilding",
        description="Exact workbench for the mod-p Burau action on the "
                    "building of GL3(F_p(t))")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("stab-identity", help="exact stabilizer of the identity vertex")
    _add_common(sp)

    sp = sub.add_parser("stab", help="stabilizer of a vertex")
    _add_common(sp)
    sp.add_argument("--vertex", required=True,
                    help="word over named generators, I, or a 3x3 matrix literal")
    sp.add_argument("--method", choices=("exact", "words"), default="exact")
    sp.add_argument("--gens", default="u,u1,h",
                    help="comma-separated generators for word search")

    sp = sub.add_parser("link", help="link of a vertex")
    _add_common(sp)
    sp.add_argument("--vertex", default="I")
    sp.add_argument("--dot", action="store_true", help="DOT output of the link graph")

    sp = sub.add_parser("explore", help="orbit classification of a ball around I")
    _add_common(sp)
    sp.add_argument("--gens", default="x,y,u")

    sp = sub.add_parser("verify", help="relation families mod 3")
    _add_common(sp)

    sp = sub.add_parser("witness", help="kernel witness word")
    _add_common(sp)
    sp.add_argument("--mod-only", action="store_true")
    sp.add_argument("--integral-only", action="store_true")

    sp = sub.add_parser("tube", help="stabilizer image pattern along the tube")
    _add_common(sp)
    sp.add_argument("--kmax", type=int, default=2)

    sp = sub.add_parser("presentation-export", help="export generators and relators")
    _add_common(sp)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        config = build_config(args)
        if args.command == "stab-identity":
            result = cmd_stab_identity(config)
        elif args.command == "stab":
            result = cmd_stab(config, args.vertex, args.method,
                              [g for g in args.gens.split(",") if g])
        elif args.command == "link":
            result = cmd_link(config, args.vertex)
        elif args.command == "explore":
            result = cmd_explore(config, [g for g in args.gens.split(",") if g])
        elif args.command == "verify":
            result = cmd_verify(config)
        elif args.command == "witness":
            result = cmd_witness(config, args.mod_only, args.integral_only)
        elif args.command == "tube":
            result = cmd_tube(config, args.kmax)
        elif args.command == "presentation-export":
            result = cmd_presentation_export(config)
        else:
            raise ValueError("unknown command %r" % args.command)
    except (ValueError, KeyError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    emit_result(config, result)
    return 0 if result.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
