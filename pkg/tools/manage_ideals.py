#!/usr/bin/env python3
"""
Management utilities for ideal JSON documents (schema singularity-ideal/1).

Features:
- Validate every document: schema identifier, ring consistency, every generator parses
- Rename a ring variable across documents (generators are re-serialized)
- Reorder: switch the recorded monomial order descriptor
- Backups and dry-run support

Usage examples:
  python tools/manage_ideals.py validate
  python tools/manage_ideals.py rename-variable --old z1 --new x --dry-run
  python tools/manage_ideals.py reorder --order lex --backup --dir data/ideals

This is an offline tool; it edits JSON files under data/ideals/ unless --dir says otherwise.
"""
import argparse
import json
import re
import shutil
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, List

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core import InvalidInput  # noqa: E402
from groebner import IdealPresentation  # noqa: E402
from polyring import MonomialOrder  # noqa: E402

IDEALS_DIR = Path("data/ideals")
NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def load_json(path: Path) -> Any:
    with path.open("r", encoding="utf-8") as f:
        return json.load(f)


def write_json(path: Path, data: Any) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
    tmp.replace(path)


def backup(path: Path) -> Path:
    stamp = datetime.now().strftime("%Y%m%dT%H%M%S")
    dest = path.with_suffix(path.suffix + f".bak.{stamp}")
    shutil.copy2(path, dest)
    return dest


def ideal_files(folder: Path) -> List[Path]:
    return sorted(p for p in folder.glob("*.json") if not p.name.endswith(".tmp"))


def validate_document(data: Any) -> List[str]:
    """Problems found in one document (empty when it is valid)."""
    problems = []
    try:
        I = IdealPresentation.from_dict(data)
    except InvalidInput as exc:
        return [str(exc)]
    names = I.ring.names
    if len(set(names)) != len(names):
        problems.append("duplicate variable names")
    if len(I.ring.weights) != len(names) or any(w <= 0 for w in I.ring.weights):
        problems.append("weights must be positive, one per variable")
    try:
        MonomialOrder.parse(I.order, I.ring.weights)
    except InvalidInput as exc:
        problems.append(str(exc))
    if len(I.generators) != len([g for g in data.get("generators", []) if str(g).strip() not in {"", "0"}]):
        problems.append("some generators are zero")
    return problems


def rename_variable(data: dict, old: str, new: str) -> int:
    """Rename in the ring and every generator; returns the number of generators touched."""
    ring = data.get("ring", {})
    variables = ring.get("variables", [])
    if old not in variables:
        return 0
    if new in variables:
        raise InvalidInput(f"variable {new!r} already exists")
    ring["variables"] = [new if v == old else v for v in variables]
    pattern = re.compile(rf"(?<![A-Za-z0-9_]){re.escape(old)}(?![A-Za-z0-9_])")
    changed = 0
    gens = []
    for g in data.get("generators", []):
        h = pattern.sub(new, g)
        changed += h != g
        gens.append(h)
    data["generators"] = gens
    return changed


def do_validate(folder: Path) -> int:
    files = ideal_files(folder)
    if not files:
        print("No ideal files found in", folder)
        return 0
    bad = 0
    for p in files:
        try:
            problems = validate_document(load_json(p))
        except json.JSONDecodeError as exc:
            problems = [f"not JSON: {exc}"]
        if problems:
            bad += 1
            print(f"{p.name}: " + "; ".join(problems))
    print(f"Done. {len(files)} files checked, {bad} with problems")
    return 2 if bad else 0


def do_rename_variable(folder: Path, old: str, new: str, dry_run: bool, backup_files: bool) -> int:
    if not NAME_RE.match(new):
        print(f"error: {new!r} is not a valid variable name", file=sys.stderr)
        return 2
    files = ideal_files(folder)
    if not files:
        print("No ideal files found in", folder)
        return 0
    total_changed = 0
    for p in files:
        data = load_json(p)
        if old not in data.get("ring", {}).get("variables", []):
            continue
        try:
            changed = rename_variable(data, old, new)
        except InvalidInput as exc:
            print(f"{p.name}: skipped ({exc})")
            continue
        problems = validate_document(data)
        if problems:
            print(f"{p.name}: rename would break the document: " + "; ".join(problems))
            continue
        print(f"{p.name}: renamed '{old}' → '{new}' in {changed} generators")
        total_changed += changed
        if not dry_run:
            if backup_files:
                bak = backup(p)
                print("  backup:", bak.name)
            write_json(p, data)
    print(f"Done. Total generators changed: {total_changed}")
    return 0


def do_reorder(folder: Path, order: str, dry_run: bool, backup_files: bool) -> int:
    files = ideal_files(folder)
    if not files:
        print("No ideal files found in", folder)
        return 0
    total = 0
    for p in files:
        data = load_json(p)
        if data.get("order") == order:
            continue
        try:
            I = IdealPresentation.from_dict(data)
            MonomialOrder.parse(order, I.ring.weights)
        except InvalidInput as exc:
            print(f"{p.name}: skipped ({exc})")
            continue
        doc = IdealPresentation(I.ring, I.generators, order, I.provenance).to_dict()
        print(f"{p.name}: order {data.get('order', 'grevlex')} → {order}")
        total += 1
        if not dry_run:
            if backup_files:
                bak = backup(p)
                print("  backup:", bak.name)
            write_json(p, doc)
    print(f"Done. Total documents reordered: {total}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Manage ideal JSON documents (validate/rename/reorder)")
    parser.add_argument("--dir", default=str(IDEALS_DIR))
    sub = parser.add_subparsers(dest="cmd")

    sub.add_parser("validate", help="Check every document parses and is consistent")

    p1 = sub.add_parser("rename-variable", help="Rename a ring variable across documents")
    p1.add_argument("--old", required=True)
    p1.add_argument("--new", required=True)
    p1.add_argument("--dry-run", action="store_true")
    p1.add_argument("--backup", action="store_true", help="create timestamped .bak copies before writing")

    p2 = sub.add_parser("reorder", help="Record another monomial order")
    p2.add_argument("--order", required=True, choices=["grevlex", "lex"])
    p2.add_argument("--dry-run", action="store_true")
    p2.add_argument("--backup", action="store_true")

    args = parser.parse_args(argv)
    folder = Path(args.dir)
    if args.cmd == "validate":
        return do_validate(folder)
    if args.cmd == "rename-variable":
        return do_rename_variable(folder, args.old, args.new, args.dry_run, args.backup)
    if args.cmd == "reorder":
        return do_reorder(folder, args.order, args.dry_run, args.backup)
    parser.print_help()
    return 0


if __name__ == "__main__":
    sys.exit(main())
