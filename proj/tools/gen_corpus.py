#!/usr/bin/env python3
"""Writes the curated replay corpus: base files plus data/corpus/manifest.json.

Sites are marked in the base templates as {{text}}; the marker is stripped and
its text becomes the span deleted before the fragment is typed. Expected
categories are not written here; tools/freeze_corpus.py adds them.
"""
import json
import pathlib
import re
import sys

JAVA_BASE = """class Shop {
    int total = 0;
    void run(int a, int b) {
        int x = {{1}};
        total = {{a + b}};
        log(a, {{2}});
        if ({{a > b}}) {
            x = {{3}};
        }
        return;
    }
    int size() {
        return {{7}};
    }
}
"""

LUA_BASE = """total = 0
function run(a, b)
  local x = {{1}}
  total = {{a + b}}
  log(a, {{2}})
  if {{a > b}} then
    x = {{3}}
  end
  return {{x}}
end
print(total)
"""

SITE = re.compile(r"\{\{(.*?)\}\}")


def strip_sites(template):
    text, sites, pos = "", [], 0
    for m in SITE.finditer(template):
        text += template[pos:m.start()]
        sites.append((len(text), len(m.group(1))))
        text += m.group(1)
        pos = m.end()
    return text + template[pos:], sites


# (site index, fragment) per composition. Sites index the {{}} markers.
CASES = {
    "java_sql": ("java_base.txt", JAVA_BASE, [
        (0, "SELECT a FROM t"),
        (0, "SELECT * FROM t"),
        (0, "SELECT min(a), max(b) FROM t"),
        (1, "SELECT a FROM t WHERE a > 1"),
        (1, "a * b"),
        (2, "SELECT a"),
        (2, "f(a, b)"),
        (3, "SELECT a FROM t"),
        (3, "a == b"),
        (4, "SELECT x AS y FROM t"),
        (4, "(a + 1) * 2"),
        (5, "SELECT count(*) FROM t"),
        (5, "SELECT FROM t"),
        (0, "SELECT a, b FROM t, u"),
        (1, "SELECT 'x' FROM t"),
        (5, "a +"),
    ]),
    "lua_sql": ("lua_base.txt", LUA_BASE, [
        (0, "SELECT a FROM t"),
        (0, "SELECT a, b FROM t"),
        (1, "SELECT * FROM t WHERE a = 1"),
        (1, "a * b"),
        (2, "SELECT a"),
        (2, "f(1) .. g(2)"),
        (3, "SELECT a FROM t"),
        (3, "a == b"),
        (4, "SELECT x AS y FROM t"),
        (4, "nil"),
        (5, "SELECT count(*) FROM t"),
        (5, "SELECT FROM t"),
        (0, "SELECT a + 1 FROM t"),
        (1, "SELECT min(a), max(b) FROM t"),
        (5, "a .."),
        (2, "SELECT 'x' FROM t"),
    ]),
    "java_lua": ("java_base.txt", JAVA_BASE, [
        (0, "local y = a .. b"),
        (0, "a = b"),
        (1, "if a then b = 1 end"),
        (1, "a + b"),
        (2, "nil"),
        (2, "while a do f() end"),
        (3, "y = a .. \"!\""),
        (3, "a .. b"),
        (4, "function g() return 1 end"),
        (4, "f(a)"),
        (5, "return nil"),
        (5, "local"),
        (0, "true"),
        (1, "local s = \"a\" .. \"b\""),
        (2, "print(a) print(b)"),
        (5, "if a then"),
    ]),
    "java_html": ("java_base.txt", JAVA_BASE, [
        (0, "<p>hello</p>"),
        (0, "<b/>"),
        (1, "<p>a<i>b</i></p>"),
        (1, "a <b"),
        (2, "<i>x</i>"),
        (2, "a < b"),
        (3, "<div><p>x</p></div>"),
        (3, "a<b"),
        (4, "<p>x, y!</p>"),
        (4, "<br/>"),
        (5, "<p>"),
        (5, "<p>hi"),
        (0, "<em>it's</em>"),
        (1, "<p></p>"),
        (2, "<ul><li>a</li><li>b</li></ul>"),
        (5, "1 < 2"),
    ]),
}


def big_java(lines=1000):
    """A class of small methods, exactly `lines` lines long, with {{}} sites."""
    body = []
    n = 0
    while len(body) + 12 <= lines - 2:
        site = "{{" + f"a{n} + 1" + "}}" if n % 10 == 0 else f"a{n} + 1"
        body += [
            f"    int m{n}(int a{n}, int b{n}) {{",
            f"        int x = {site};",
            f"        int y = b{n} * 2;",
            f"        if (x > y) {{",
            f"            x = x - y;",
            f"        }} else {{",
            f"            y = y - x;",
            f"        }}",
            f"        while (x < 10) {{",
            f"            x = x + 1;",
            f"        }}",
            f"        return x + y;",
            f"    }}",
        ][:12] + ["    }"]
        n += 1
    while len(body) < lines - 2:
        body.append(f"    int f{len(body)} = {len(body)};")
    return "class Big {\n" + "\n".join(body) + "\n}\n"


TIMING_FRAGMENTS = ["SELECT a FROM t", "SELECT min(a), max(b) FROM t WHERE a > 1", "a * b + 3"]


def timing(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    text, sites = strip_sites(big_java())
    assert text.count("\n") == 1000
    (out / "big.java").write_text(text)
    manifest = []
    for i, (offset, span) in enumerate(sites):
        fragment = TIMING_FRAGMENTS[i % len(TIMING_FRAGMENTS)]
        manifest.append({"name": f"big_{i:02d}", "composition": "java_sql", "base_file": "big.java",
                         "offset": offset, "span": span, "fragment": fragment})
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"{len(manifest)} timing cases written to {out}")


def main(out_dir):
    out = pathlib.Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = []
    written = set()
    for comp, (base_name, template, cases) in CASES.items():
        text, sites = strip_sites(template)
        if base_name not in written:
            (out / base_name).write_text(text)
            written.add(base_name)
        for n, (site, fragment) in enumerate(cases, 1):
            offset, span = sites[site]
            manifest.append({
                "name": f"{comp}_{n:02d}",
                "composition": comp,
                "base_file": base_name,
                "offset": offset,
                "span": span,
                "fragment": fragment,
            })
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    print(f"{len(manifest)} test cases written to {out}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/corpus")
    timing(sys.argv[2] if len(sys.argv) > 2 else "data/timing")
