"""Script language: declarations of rings, elements, modules, complexes, then commands.

    ring A = poly(F5; x:1, y:1) / ideal(x*y)
    elem f = A(x + y)
    module M = coker(A; shifts=[0]; rels=[[x],[y]])
    complex C = chain(A; shifts=[[0],[1]]; maps=[[[x]]])
    ext(M, M; imax=3)

Statements end at a newline outside brackets; '#' starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..homalg import ChainComplex, FPModule, ModuleMap
from ..koszul_dg import koszul_complex
from ..ring_core import QuotientRing, RingElem
from ..ring_core.field import Field
from ..ring_core.polyring import GradedPolyRing

IDENT = re.compile(r"[A-Za-z_]\w*")
DECL = re.compile(r"(ring|elem|module|complex)\s+([A-Za-z_]\w*)\s*=\s*")
KEY = re.compile(r"\s*([A-Za-z_]\w*)\s*(=|:)(?!=)")
CALL = re.compile(r"\s*([A-Za-z_]\w*)\s*\(")
PAPER = re.compile(r"paper[-_]examples\s*(\(\s*\))?\s*")


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}")
        self.message, self.line, self.col = message, line, col


# -- syntax tree --------------------------------------------------------------

@dataclass
class Atom:
    text: str
    pos: int


@dataclass
class ListNode:
    items: list
    pos: int


@dataclass
class Item:
    key: str | None
    sep: str | None
    value: object
    pos: int


@dataclass
class Call:
    name: str
    groups: list  # list of lists of Item
    pos: int


@dataclass
class Quot:
    base: object
    ideal: Call
    pos: int


@dataclass
class Command:
    index: int
    op: str
    text: str
    args: dict
    options: dict  # explicitly given options, echoed in the output
    line: int


@dataclass
class SessionScript:
    env: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)


# -- lexical helpers ----------------------------------------------------------

class _Src:
    def __init__(self, text: str):
        self.text = text
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(self, pos: int) -> tuple:
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= pos:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, pos - self.starts[lo] + 1

    def error(self, msg: str, pos: int) -> DSLError:
        return DSLError(msg, *self.where(pos))


def _statements(src: _Src):
    """Yield (start, end) of statements; comments are already blanked out."""
    text = src.text
    opened, start, i, n = [], 0, 0, len(text)
    while i < n:
        ch = text[i]
        if ch in "([":
            opened.append(i)
        elif ch in ")]":
            if not opened:
                raise src.error(f"unbalanced {ch!r}", i)
            opened.pop()
        elif ch == "\n" and not opened:
            yield start, i
            start = i + 1
        i += 1
    if opened:
        raise src.error("unclosed bracket", opened[-1])
    yield start, n


class _Parser:
    def __init__(self, src: _Src):
        self.src = src
        self.text = src.text

    def strip(self, a: int, b: int) -> tuple:
        t = self.text
        while a < b and t[a].isspace():
            a += 1
        while b > a and t[b - 1].isspace():
            b -= 1
        return a, b

    def split_top(self, a: int, b: int, seps: str) -> list:
        out, depth, start = [], 0, a
        for i in range(a, b):
            ch = self.text[i]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch in seps and depth == 0:
                out.append((start, i))
                start = i + 1
        out.append((start, b))
        return out

    def matching(self, i: int, b: int) -> int:
        depth = 0
        for j in range(i, b):
            ch = self.text[j]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
                if depth == 0:
                    return j
        raise self.src.error("unclosed bracket", i)

    def value(self, a: int, b: int):
        a, b = self.strip(a, b)
        if a >= b:
            raise self.src.error("missing value", a)
        t = self.text
        # quotient: <expr> / ideal(...) at top level
        for s, e in reversed(self.split_top(a, b, "/")[1:]):
            s2, _ = self.strip(s, e)
            if t.startswith("ideal", s2) and re.match(r"ideal\s*\(", t[s2:e]):
                base = self.value(a, s - 1)
                ideal = self.value(s2, e)
                return Quot(base, ideal, a)
        if t[a] == "[":
            close = self.matching(a, b)
            if close != b - 1:
                raise self.src.error("unexpected text after list", close + 1)
            if not t[a + 1:close].strip():
                return ListNode([], a)
            return ListNode([self.value(s, e) for s, e in self.split_top(a + 1, close, ",")], a)
        m = CALL.match(t, a)
        if m and m.end() <= b:
            open_ = m.end() - 1
            close = self.matching(open_, b)
            if close == b - 1:
                return Call(m.group(1), self.args(open_ + 1, close), a)
        return Atom(t[a:b], a)

    def args(self, a: int, b: int) -> list:
        groups = []
        for s, e in self.split_top(a, b, ";"):
            s, e = self.strip(s, e)
            if s >= e:
                continue
            items = []
            for s2, e2 in self.split_top(s, e, ","):
                s2, e2 = self.strip(s2, e2)
                if s2 >= e2:
                    raise self.src.error("empty argument", s2)
                m = KEY.match(self.text, s2)
                if m and m.end() <= e2:
                    items.append(Item(m.group(1), m.group(2), self.value(m.end(), e2), s2))
                else:
                    items.append(Item(None, None, self.value(s2, e2), s2))
            groups.append(items)
        return groups


# -- evaluation ---------------------------------------------------------------

def _kind(obj) -> str:
    if isinstance(obj, QuotientRing):
        return "ring"
    if isinstance(obj, RingElem):
        return "elem"
    if isinstance(obj, FPModule):
        return "module"
    if isinstance(obj, ChainComplex):
        return "complex"
    return type(obj).__name__


class _Eval:
    def __init__(self, src: _Src, env: dict):
        self.src = src
        self.env = env

    def err(self, msg, node) -> DSLError:
        return self.src.error(msg, node.pos)

    def lookup(self, node, kinds: tuple):
        if isinstance(node, Atom) and IDENT.fullmatch(node.text.strip()):
            name = node.text.strip()
            if name in self.env:
                obj = self.env[name]
                if _kind(obj) not in kinds:
                    raise self.err(f"{name} is a {_kind(obj)}, expected {' or '.join(kinds)}", node)
                return obj
            raise self.err(f"unbound name {name!r}", node)
        return None

    # scalars
    def integer(self, node) -> int:
        if isinstance(node, Atom) and re.fullmatch(r"\s*[-+]?\d+\s*", node.text):
            return int(node.text)
        raise self.err("expected an integer", node)

    def boolean(self, node) -> bool:
        if isinstance(node, Atom) and node.text.strip() in ("true", "false"):
            return node.text.strip() == "true"
        raise self.err("expected true or false", node)

    def listof(self, node) -> list:
        if not isinstance(node, ListNode):
            raise self.err("expected a list", node)
        return node.items

    # rings and elements
    def ring(self, node) -> QuotientRing:
        if isinstance(node, Quot):
            R = self.ring(node.base)
            if node.ideal.name != "ideal":
                raise self.err("expected ideal(...)", node.ideal)
            gens = [self.elem(it.value, R) for g in node.ideal.groups for it in g]
            return self.guard(lambda: R.quotient(gens), node)
        if isinstance(node, Call) and node.name == "poly":
            return self.poly(node)
        obj = self.lookup(node, ("ring",))
        if obj is None:
            raise self.err("expected a ring", node)
        return obj

    def poly(self, node: Call) -> QuotientRing:
        if len(node.groups) < 2 or len(node.groups[0]) != 1:
            raise self.err("poly(<field>; <var>:<deg>, ...) expected", node)
        fnode = node.groups[0][0].value
        if not isinstance(fnode, Atom):
            raise self.err("expected a field name", fnode)
        field_ = self.guard(lambda: Field.parse(fnode.text.strip()), fnode)
        names, degs, order = [], [], "grevlex"
        for it in node.groups[1]:
            if it.key is None:
                if not isinstance(it.value, Atom):
                    raise self.err("expected a variable name", it)
                names.append(it.value.text.strip())
                degs.append(1)
            elif it.sep == ":":
                names.append(it.key)
                degs.append(self.integer(it.value))
                if degs[-1] < 1:
                    raise self.err("degrees must be ≥ 1", it.value)
            else:
                raise self.err(f"unexpected option {it.key!r}", it)
        for g in node.groups[2:]:
            for it in g:
                if it.key == "order" and isinstance(it.value, Atom):
                    order = it.value.text.strip()
                else:
                    raise self.err("unexpected argument", it)
        S = self.guard(lambda: GradedPolyRing(field_, names, degs, order), node)
        return QuotientRing(S)

    def elem(self, node, R: QuotientRing) -> RingElem:
        if isinstance(node, Call) and node.name in self.env and _kind(self.env[node.name]) == "ring":
            R2 = self.env[node.name]
            if len(node.groups) != 1 or len(node.groups[0]) != 1:
                raise self.err("expected a single polynomial", node)
            f = self.elem(node.groups[0][0].value, R2)
            return self.guard(lambda: _to_ring(R, f), node)
        if not isinstance(node, Atom):
            raise self.err("expected a polynomial", node)
        text = node.text.strip()
        if text in self.env and text not in R.names:
            obj = self.env[text]
            if _kind(obj) != "elem":
                raise self.err(f"{text} is a {_kind(obj)}, expected an element", node)
            return self.guard(lambda: _to_ring(R, obj), node)

        def sub(m):
            nm = m.group(0)
            if nm in R.names or nm not in self.env:
                return nm
            obj = self.env[nm]
            if _kind(obj) != "elem":
                raise self.err(f"{nm} is a {_kind(obj)}, expected an element", node)
            return f"({obj.poly})"

        text = IDENT.sub(sub, text)
        return self.guard(lambda: R(R.ambient.parse(text)), node)

    # modules and complexes
    def module(self, node) -> FPModule:
        if isinstance(node, Call):
            if node.name in ("coker", "free"):
                return self.coker(node)
            if node.name == "shift":
                pos = [it.value for g in node.groups for it in g]
                if len(pos) != 2:
                    raise self.err("shift(<module>; <int>) expected", node)
                M = self.module(pos[0])
                return M.shifted(self.integer(pos[1]))
        obj = self.lookup(node, ("module",))
        if obj is None:
            raise self.err("expected a module", node)
        return obj

    def _kw(self, node: Call, required: tuple, optional: tuple = ()) -> tuple:
        if not node.groups or len(node.groups[0]) != 1 or node.groups[0][0].key is not None:
            raise self.err(f"{node.name}(<ring>; ...) expected", node)
        R = self.ring(node.groups[0][0].value)
        kw = {}
        for g in node.groups[1:]:
            for it in g:
                if it.key not in required + optional or it.sep != "=":
                    raise self.err(f"unexpected argument to {node.name}", it)
                kw[it.key] = it.value
        for k in required:
            if k not in kw:
                raise self.err(f"{node.name} needs {k}=", node)
        return R, kw

    def coker(self, node: Call) -> FPModule:
        R, kw = self._kw(node, ("shifts",), ("rels",) if node.name == "coker" else ())
        shifts = [self.integer(v) for v in self.listof(kw["shifts"])]
        cols = []
        for col in self.listof(kw["rels"]) if "rels" in kw else []:
            entries = self.listof(col)
            if len(entries) != len(shifts):
                raise self.err("relation length does not match the number of generators", col)
            cols.append([self.elem(e, R) for e in entries])
        return self.guard(lambda: FPModule.from_matrix(R, shifts, cols), node)

    def complex(self, node) -> ChainComplex:
        if isinstance(node, Call) and node.name == "koszul":
            pos = [it.value for g in node.groups for it in g]
            if not pos:
                raise self.err("koszul(<ring>; elems...) expected", node)
            R = self.ring(pos[0])
            return self.guard(lambda: koszul_complex(R, [self.elem(e, R) for e in pos[1:]]), node)
        if isinstance(node, Call) and node.name == "chain":
            return self.chain(node)
        obj = self.lookup(node, ("complex",))
        if obj is None:
            raise self.err("expected a complex", node)
        return obj

    def chain(self, node: Call) -> ChainComplex:
        R, kw = self._kw(node, ("shifts",), ("maps", "start"))
        start = self.integer(kw["start"]) if "start" in kw else 0
        terms = {}
        for k, sh in enumerate(self.listof(kw["shifts"])):
            terms[start + k] = FPModule.free(R, [self.integer(s) for s in self.listof(sh)])
        diffs = {}
        for k, mat in enumerate(self.listof(kw["maps"]) if "maps" in kw else []):
            i = start + k + 1
            if i not in terms:
                raise self.err(f"map {k} has no source term", mat)
            src, tgt = terms[i], terms[i - 1]
            cols = self.listof(mat)
            if len(cols) != src.rank:
                raise self.err("one column per source generator expected", mat)
            imgs = []
            for col in cols:
                entries = self.listof(col)
                if len(entries) != tgt.rank:
                    raise self.err("column length does not match the target rank", col)
                imgs.append(tgt.elem([self.elem(e, R) for e in entries]))
            diffs[i] = self.guard(lambda: ModuleMap(src, tgt, imgs, 0), mat)
        C = self.guard(lambda: ChainComplex(terms, diffs), node)
        if not C.is_complex():
            raise self.err("d o d != 0", node)
        return C

    def guard(self, thunk, node):
        try:
            return thunk()
        except DSLError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise self.err(str(exc), node) from None


def _to_ring(R: QuotientRing, f: RingElem) -> RingElem:
    if f.ring.ambient == R.ambient:
        return R(f.poly)
    return R(R.ambient.parse(str(f.poly)))


# -- commands -------------------------------------------------------------------

# positional parameters, then options with defaults; kinds: ring, module, source (module or complex),
# elem, elems, int, bool.  A leading '*' collects the remaining positionals.  REQ marks a required
# option, None an optional one that stays unset.
REQ = "required"
SIGNATURES = {
    "resolve": (["M:module"], {"length": ("int", 4), "D": ("int", 12)}),
    "ext": (["M:module", "N:module"], {"imax": ("int", 4), "D": ("int", 12)}),
    "tor": (["M:module", "N:module"], {"kmax": ("int", 4), "D": ("int", 12)}),
    "koszul": (["A:ring", "*elems"], {"D": ("int", 12)}),
    "regseq": (["A:ring", "*elems"], {}),
    "dtensor": (["M:module"], {"x": ("elem", REQ), "n": ("int", REQ), "i": ("int", None),
                               "kmax": ("int", 3), "D": ("int", 12)}),
    "dgext": (["A:ring", "*elems"], {"M": ("source", REQ), "N": ("module", REQ), "imax": ("int", 4),
                                     "hbound": ("int", None), "D": ("int", 12)}),
    "summand": (["A:ring", "*elems"], {"L": ("module", REQ), "N": ("module", REQ), "imax": ("int", 4)}),
    "liftstep": (["M:module"], {"L": ("module", None), "x": ("elem", REQ), "n": ("int", 1),
                                "exhaustive": ("bool", False), "D": ("int", 12)}),
    "lift": (["M:module"], {"A": ("ring", None), "x": ("elem", REQ), "N": ("int", 5), "D": ("int", 12),
                            "retry": ("int", 0)}),
    "liftmulti": (["A:ring", "*elems"], {"M": ("module", REQ), "N": ("int", 5), "D": ("int", 12),
                                         "retry": ("int", 0)}),
    "checklci": (["A:ring", "*elems"], {"M": ("module", REQ), "N": ("int", 5), "D": ("int", 12)}),
    "paper-examples": ([], {}),
}

_ORDER = {"ring": 0, "module": 1, "source": 1}


def _bind_command(ev: _Eval, call: Call, index: int, text: str, line: int) -> Command:
    op = call.name
    pos_spec, opt_spec = SIGNATURES[op]
    spec = {}
    for p in pos_spec:
        nm, kind = p.lstrip("*").split(":") if ":" in p else (p.lstrip("*"), "elems")
        spec[nm] = kind
    for nm, (kind, _) in opt_spec.items():
        spec[nm] = kind
    given: dict = {}
    positional = [it for g in call.groups for it in g if it.key is None]
    names = [p.lstrip("*").split(":")[0] for p in pos_spec]
    variadic = bool(pos_spec) and pos_spec[-1].startswith("*")
    for k, it in enumerate(positional):
        if k < len(names) - (1 if variadic else 0):
            given[names[k]] = it
        elif variadic:
            given.setdefault(names[-1], []).append(it)
        else:
            raise ev.err(f"too many arguments to {op}", it)
    for g in call.groups:
        for it in g:
            if it.key is None:
                continue
            if it.sep != "=" or it.key not in spec:
                raise ev.err(f"unknown option {it.key!r} for {op}", it)
            if it.key in given:
                raise ev.err(f"{it.key} given twice", it)
            given[it.key] = it
    local = _Eval(ev.src, dict(ev.env))
    args, options = {}, {}
    items = sorted(given.items(), key=lambda kv: _ORDER.get(spec[kv[0]], 2))
    ring = None
    for nm, it in items:
        kind = spec[nm]
        if kind == "elems":
            continue
        if kind in ("ring", "module", "source"):
            v = it.value
            if kind == "ring":
                obj = local.ring(v)
            elif kind == "module":
                obj = local.module(v)
            else:
                obj = local.complex(v) if _is_complex_node(local, v) else local.module(v)
            args[nm] = obj
            if not (isinstance(v, Atom) and v.text.strip() == nm):
                local.env[nm] = obj
            if ring is None:
                ring = obj if kind == "ring" else obj.ring
    for nm, it in items:
        kind = spec[nm]
        if kind in ("ring", "module", "source"):
            continue
        if kind == "int":
            args[nm] = local.integer(it.value)
            options[nm] = args[nm]
        elif kind == "bool":
            args[nm] = local.boolean(it.value)
            options[nm] = args[nm]
        elif kind in ("elem", "elems"):
            if ring is None:
                raise ev.err("no ring to read elements in", call)
            if kind == "elem":
                args[nm] = local.elem(it.value, ring)
            else:
                nodes = it if isinstance(it, list) else [it]
                vals = []
                for n in nodes:
                    v = n.value
                    vals.extend(local.elem(e, ring) for e in (v.items if isinstance(v, ListNode) else [v]))
                args[nm] = vals
    for nm, (kind, default) in opt_spec.items():
        if nm not in args:
            if default == REQ:
                raise ev.err(f"{op} needs {nm}=", call)
            args[nm] = default
    for nm in names:
        if nm not in args:
            if nm == "elems":
                args[nm] = []
            else:
                raise ev.err(f"{op} needs {nm}", call)
    return Command(index, op, text, args, options, line)


def _is_complex_node(ev: _Eval, node) -> bool:
    if isinstance(node, Call):
        return node.name in ("chain", "koszul")
    if isinstance(node, Atom):
        return _kind(ev.env.get(node.text.strip())) == "complex"
    return False


# -- entry point ---------------------------------------------------------------

def parse(text: str) -> SessionScript:
    text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group(0)), text)
    src = _Src(text)
    p = _Parser(src)
    ev = _Eval(src, {})
    script = SessionScript(ev.env)
    for a, b in _statements(src):
        a, b = p.strip(a, b)
        if a >= b:
            continue
        stmt = text[a:b]
        line = src.where(a)[0]
        if PAPER.fullmatch(stmt):
            script.commands.append(Command(len(script.commands), "paper-examples", stmt, {}, {}, line))
            continue
        m = DECL.match(stmt)
        if m:
            kind, name = m.group(1), m.group(2)
            if name in ev.env:
                raise src.error(f"{name!r} is already bound", a)
            node = p.value(a + m.end(), b)
            if kind == "ring":
                obj = ev.ring(node)
            elif kind == "module":
                obj = ev.module(node)
            elif kind == "complex":
                obj = ev.complex(node)
            else:
                if not (isinstance(node, Call) and _kind(ev.env.get(node.name)) == "ring"):
                    raise src.error("elem <name> = <ring>(<polynomial>) expected", a + m.end())
                obj = ev.elem(node, ev.env[node.name])
            ev.env[name] = obj
            continue
        node = p.value(a, b)
        if not isinstance(node, Call):
            raise src.error("expected a declaration or a command", a)
        if node.name not in SIGNATURES:
            raise src.error(f"unknown command {node.name!r}", a)
        script.commands.append(_bind_command(ev, node, len(script.commands), stmt, line))
    return script
