#!/usr/bin/env python3
"""Writes the golden scenario scripts into data/scenarios/.

Each script starts with {"composition": id}, then protocol messages. Given the
autobox binary, also writes the replies as <name>.expected.ndjson; those are
reviewed before being checked in.
"""
import json
import pathlib
import subprocess
import sys

JAVA_HOLE = "class Q {\n    void m() {\n        int x = \n    }\n}\n"
JAVA_SEMI = "class Q {\n    void m() {\n        int x = ;\n    }\n}\n"
JAVA_CALL = "class Q {\n    void m() {\n        remote();\n    }\n}\n"
LUA_HOLE = "x = \nprint(x)\n"


def keys(text):
    return [{"type": "key", "ch": c} for c in text]


def load(text, cursor):
    return {"type": "load", "text": text, "cursor": cursor}


def fig1():
    # (e): more Java after the statement leaves the box alone.
    return "java_sql", [load(JAVA_HOLE, 41)] + keys("SELECT min(a), max(b) FROM t;") + keys(" x = x;")


def fig6():
    # A Java product typed without its second `*` gets boxed as SQL; adding
    # the `*` breaks the query but leaves valid Java, so the box goes.
    msgs = [load(JAVA_SEMI, 41)] + keys("select * from t")
    msgs.append({"type": "move", "pos": 55})
    msgs += keys("* ")
    return "java_sql", msgs


def backspace():
    return "java_sql", [load(JAVA_SEMI, 41)] + keys("SELECT * FROM t") + [{"type": "key", "ch": "\b"}]


def fig7():
    msgs = [load(JAVA_CALL, 40), {"type": "key", "ch": "SELECT a, b"}, {"type": "choose", "id": 1}]
    msgs += [{"type": "undo"}, {"type": "choose", "id": 2}]
    return "java_sql", msgs


def noinsert():
    msgs = [load(JAVA_HOLE, 41)] + keys("SELECT min(a),") + [{"type": "undo"}]
    for _ in range(3):
        msgs += [{"type": "key", "ch": "\b"}, {"type": "key", "ch": ","}]
    return "java_sql", msgs


def lua():
    return "lua_sql", [load(LUA_HOLE, 4)] + keys("SELECT a, b FROM t")


def commit():
    msgs = [load(JAVA_HOLE, 41)] + keys("SELECT a FROM t;")
    msgs += [{"type": "move", "pos": 50}, {"type": "move", "pos": 0}, {"type": "mark_uncommitted", "box": 1}]
    msgs += [{"type": "bogus"}, {"type": "choose", "id": 9}]
    return "java_sql", msgs


SCENARIOS = {f.__name__: f for f in (fig1, fig6, backspace, fig7, noinsert, lua, commit)}


def main(out_dir, binary=None):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, make in SCENARIOS.items():
        comp, msgs = make()
        lines = [json.dumps({"composition": comp})] + [json.dumps(m) for m in msgs]
        (out / f"{name}.ndjson").write_text("\n".join(lines) + "\n")
        if binary:
            replies = subprocess.run([binary, "replay", str(out / f"{name}.ndjson")], check=True,
                                     capture_output=True, text=True).stdout
            (out / f"{name}.expected.ndjson").write_text(replies)
    print(f"{len(SCENARIOS)} scenarios written to {out}")


if __name__ == "__main__":
    # usage: gen_scenarios.py [out dir] [autobox binary to freeze expected replies]
    main(sys.argv[1] if len(sys.argv) > 1 else "data/scenarios", sys.argv[2] if len(sys.argv) > 2 else None)
