"""Metamorphic order-invariance harness.

Programs in the session language are generated from a seed, run once with
the natural storage order and again under several shuffled orders.  Every
answer to an admissible question (scalars, sorted vectors, polynomial
prints, which statements fail and with what error code) must agree across
runs.  Disord displays are excluded: they show storage order and hash
tokens, which legitimately differ.
"""

from __future__ import annotations

import hashlib
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .interpreter import RunResult, run_statements
from .lang import parse_script
from .storage import INSERTION, Shuffle

MAX_LENGTH = 12
# bound on the term count of every stored polynomial
MAX_TERMS = 8

OPERATION_KINDS = (
    "disord",
    "rdis",
    "mvp_literal",
    "rmvp",
    "arith_scalar",
    "arith_pair",
    "compare",
    "reduce",
    "sort",
    "pmax_pmin",
    "rev",
    "extract_bool",
    "replace_bool",
    "extract_int",
    "replace_int",
    "replace_all",
    "hash_mismatch",
    "plain_operand",
    "mvp_arith",
    "mvp_print",
    "mvp_equal",
    "coeffs_query",
    "set_coeffs",
    "mvp_prohibited",
    "triples",
    "map",
)


@dataclass(frozen=True)
class FuzzProgram:
    seed: int
    statements: tuple
    kinds: frozenset = field(default_factory=frozenset)

    @property
    def source(self) -> str:
        return "\n".join(self.statements) + "\n"


@dataclass(frozen=True)
class Observation:
    line: int
    kind: str
    payload: Optional[str]  # None for order-exposed records


@dataclass(frozen=True)
class Verdict:
    passed: bool
    seed: int
    line: Optional[int] = None
    detail: str = ""


def observe(result: RunResult) -> list:
    """Order-free payloads of a transcript, one per record, plus the exit status."""
    out = []
    for record in result.records:
        if record.kind == "error":
            out.append(Observation(record.line, "error", record.code))
        elif record.order_exposed:
            out.append(Observation(record.line, record.kind, None))
        else:
            out.append(Observation(record.line, record.kind, record.text))
    out.append(Observation(-1, "status", str(result.status)))
    return out


def trial_seed(program_seed: int, trial: int) -> int:
    digest = hashlib.sha1(f"trial\0{program_seed}\0{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _first_divergence(expected, actual):
    for i, (e, a) in enumerate(zip(expected, actual)):
        if e != a:
            return i
    if len(expected) != len(actual):
        return min(len(expected), len(actual))
    return None


def check_invariance(program: FuzzProgram, trials: int = 4) -> Verdict:
    """PASS iff every storage order yields the same order-free observations."""
    if trials < 2:
        raise ValueError("trials must be at least 2")
    statements = parse_script(program.source)
    baseline = observe(run_statements(statements, INSERTION))
    for t in range(1, trials):
        policy = Shuffle(trial_seed(program.seed, t))
        observed = observe(run_statements(statements, policy))
        i = _first_divergence(baseline, observed)
        if i is None:
            continue
        ref = baseline[i] if i < len(baseline) else observed[i]
        line = ref.line if ref.line > 0 else len(program.statements)
        source = program.statements[line - 1] if 0 < line <= len(program.statements) else ""
        got = observed[i] if i < len(observed) else None
        want = baseline[i] if i < len(baseline) else None
        detail = (
            f"line {line}: {source}\n"
            f"  insertion: {want}\n"
            f"  {policy}: {got}"
        )
        return Verdict(False, program.seed, line, detail)
    return Verdict(True, program.seed)


# -- program generation -----------------------------------------------------

class _Generator:
    def __init__(self, seed: int):
        self.rng = random.Random(seed)
        self.lines: list = []
        self.kinds: set = set()
        # name -> (family, length or None); equal families share a token
        self.disords: dict = {}
        # name -> upper bound on term count
        self.polys: dict = {}
        self.counter = 0
        self.families = 0

    # helpers
    def fresh_name(self, prefix):
        self.counter += 1
        return f"{prefix}{self.counter}"

    def new_family(self):
        self.families += 1
        return ("fresh", self.families)

    @staticmethod
    def reversed_family(family):
        if family[0] == "rev":
            return family[1]
        return ("rev", family)

    def emit(self, kind, line):
        self.lines.append(line)
        self.kinds.add(kind)

    def pick_disord(self, known_length=False, min_length=0):
        names = [n for n, (_, length) in self.disords.items()
                 if (not known_length or length is not None)
                 and (length is None or length >= min_length)]
        if known_length and min_length:
            names = [n for n in names if self.disords[n][1] is not None]
        return self.rng.choice(names) if names else None

    def sibling(self, name):
        family = self.disords[name][0]
        return self.rng.choice([n for n, (f, _) in self.disords.items() if f == family])

    def stranger(self, name):
        family = self.disords[name][0]
        others = [n for n, (f, _) in self.disords.items() if f != family]
        return self.rng.choice(others) if others else None

    def pick_poly(self):
        return self.rng.choice(sorted(self.polys)) if self.polys else None

    def number(self):
        return self.rng.randint(-3, 9)

    def values(self, n):
        if self.rng.random() < 0.8:
            return self.rng.sample(range(-9, 21), n)
        return [self.rng.randint(-3, 5) for _ in range(n)]

    def literal_poly(self):
        terms = []
        for _ in range(self.rng.randint(1, 5)):
            c = self.rng.choice([1, 1, 2, 3, 4, 5, 6, 7, -1, -2, -3])
            factors = []
            for s in self.rng.sample("abcxyz", self.rng.randint(0, 3)):
                e = self.rng.randint(1, 4)
                factors.append(s if e == 1 else f"{s}^{e}")
            body = " ".join(factors)
            mag = abs(c)
            if body:
                term = body if mag == 1 and self.rng.random() < 0.7 else f"{mag}*" + "*".join(factors)
            else:
                term = str(mag)
            terms.append(("-" if c < 0 else "+", term))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            text += f" {sign} {term}"
        return text, len(terms)

    # statement makers; each returns False when its preconditions fail
    def make_disord(self):
        n = self.rng.randint(1, MAX_LENGTH)
        name = self.fresh_name("d")
        vals = self.values(n)
        if self.rng.random() < 0.15 and n > 1:
            lo = self.rng.randint(-3, 3)
            self.emit("disord", f"{name} <- disord({lo}:{lo + n - 1})")
        else:
            self.emit("disord", f"{name} <- disord({', '.join(map(str, vals))})")
        # identical literals share a token, but the generator does not rely on it
        self.disords[name] = (self.new_family(), n)
        return True

    def make_rdis(self):
        n = self.rng.randint(2, MAX_LENGTH)
        name = self.fresh_name("d")
        self.emit("rdis", f"{name} <- rdis({n}, {self.rng.randint(0, 10 ** 6)})")
        self.disords[name] = (self.new_family(), n)
        return True

    def make_mvp_literal(self):
        text, terms = self.literal_poly()
        name = self.fresh_name("p")
        self.emit("mvp_literal", f'{name} <- mvp("{text}")')
        self.polys[name] = terms
        return True

    def make_rmvp(self):
        name = self.fresh_name("p")
        self.emit("rmvp", f"{name} <- rmvp({self.rng.randint(0, 10 ** 6)})")
        self.polys[name] = 7
        return True

    def arith_scalar(self):
        a = self.pick_disord()
        if a is None:
            return False
        op = self.rng.choice(["+", "-", "*", "/", "^", "%%"])
        k = 2 if op == "^" else self.rng.choice([2, 3, 5, 7])
        expr = f"{a} {op} {k}" if self.rng.random() < 0.7 else f"{k} {op} {a}"
        name = self.fresh_name("d")
        self.emit("arith_scalar", f"{name} <- {expr}")
        self.disords[name] = self.disords[a]
        return True

    def arith_pair(self):
        a = self.pick_disord()
        if a is None:
            return False
        b = self.sibling(a)
        op = self.rng.choice(["+", "-", "*", "/", "%%"])
        name = self.fresh_name("d")
        self.emit("arith_pair", f"{name} <- {a} {op} {b}")
        self.disords[name] = self.disords[a]
        return True

    def compare(self):
        a = self.pick_disord()
        if a is None:
            return False
        op = self.rng.choice(["<", "<=", ">", ">=", "==", "!="])
        fn = self.rng.choice(["any", "all", "sort", "length"])
        self.emit("compare", f"{fn}({a} {op} {self.number()})")
        return True

    def reduce(self):
        a = self.pick_disord()
        if a is None:
            return False
        fn = self.rng.choice(["max", "min", "sum", "prod", "length"])
        self.emit("reduce", f"{fn}({a})")
        return True

    def sort(self):
        a = self.pick_disord()
        if a is None:
            return False
        self.emit("sort", f"sort({a})")
        return True

    def pmax_pmin(self):
        a = self.pick_disord()
        if a is None:
            return False
        fn = self.rng.choice(["pmax", "pmin"])
        other = self.sibling(a) if self.rng.random() < 0.5 else str(self.number())
        name = self.fresh_name("d")
        self.emit("pmax_pmin", f"{name} <- {fn}({a}, {other})")
        self.disords[name] = self.disords[a]
        return True

    def rev(self):
        a = self.pick_disord()
        if a is None:
            return False
        choice = self.rng.random()
        if choice < 0.4:
            self.emit("rev", f"sort(rev(rev({a})) + {a})")
        elif choice < 0.7:
            self.emit("rev", f"try(sort(rev({a}) + {a}))")
        else:
            name = self.fresh_name("d")
            family, length = self.disords[a]
            self.emit("rev", f"{name} <- rev({a})")
            self.disords[name] = (self.reversed_family(family), length)
        return True

    def extract_bool(self):
        a = self.pick_disord()
        if a is None:
            return False
        b = self.sibling(a)
        op = self.rng.choice(["<", ">", ">=", "!="])
        name = self.fresh_name("d")
        self.emit("extract_bool", f"{name} <- {a}[{b} {op} {self.number()}]")
        self.disords[name] = (self.new_family(), None)
        return True

    def replace_bool(self):
        a = self.pick_disord()
        if a is None:
            return False
        b = self.sibling(a)
        op = self.rng.choice(["<", ">", "<=", ">="])
        k = self.number()
        mask = f"{b} {op} {k}"
        if self.rng.random() < 0.5:
            self.emit("replace_bool", f"{a}[{mask}] <- {self.number()}")
        else:
            c = self.sibling(a)
            self.emit("replace_bool", f"{a}[{mask}] <- {c}[{mask}] + {self.rng.randint(1, 4)}")
        return True

    def _permutation(self, n):
        perm = list(range(1, n + 1))
        self.rng.shuffle(perm)
        if n > 1 and self.rng.random() < 0.3:
            return f"{n}:1"
        return f"c({', '.join(map(str, perm))})"

    def extract_int(self):
        a = self.pick_disord(known_length=True)
        if a is None:
            return False
        n = self.disords[a][1]
        choice = self.rng.random()
        if choice < 0.6 and n > 1:
            k = self.rng.randint(1, n)
            fn = self.rng.choice(["max", "min", "sum"])
            self.emit("extract_int", f"try({fn}({a}[{k}]))")
        elif choice < 0.8:
            self.emit("extract_int", f"sort({a}[{self._permutation(n)}])")
        else:
            self.emit("extract_int", f"length({a}[c()])")
        return True

    def replace_int(self):
        a = self.pick_disord(known_length=True)
        if a is None:
            return False
        n = self.disords[a][1]
        choice = self.rng.random()
        if choice < 0.4 and n > 1:
            k = self.rng.randint(1, n)
            self.emit("replace_int", f"try({a}[{k}] <- 1000)")
        elif choice < 0.7:
            self.emit("replace_int", f"{a}[{self._permutation(n)}] <- {self.number()}")
        else:
            name = self.fresh_name("d")
            vals = ", ".join(str(self.rng.randint(-5, 15)) for _ in range(n))
            self.emit("replace_int", f"{name} <- {a}")
            self.emit("replace_int", f"{name}[1:{n}] <- c({vals})" if n > 1 else f"{name}[1] <- c({vals})")
            self.disords[name] = (self.new_family(), n)
        return True

    def replace_all(self):
        a = self.pick_disord()
        if a is None:
            return False
        if self.rng.random() < 0.5:
            self.emit("replace_all", f"{a}[] <- {self.sibling(a)}^2 + 7")
        else:
            self.emit("replace_all", f"{a}[] <- {self.number()}")
        return True

    def hash_mismatch(self):
        a = self.pick_disord()
        b = self.stranger(a) if a else None
        if b is None:
            return False
        self.emit("hash_mismatch", f"try(sum({a} + {b}))")
        return True

    def plain_operand(self):
        a = self.pick_disord()
        if a is None:
            return False
        self.emit("plain_operand", f"try(sum({a} + 1:{self.rng.randint(2, 4)}))")
        return True

    def mvp_arith(self):
        p = self.pick_poly()
        if p is None:
            return False
        q = self.pick_poly()
        bp, bq = self.polys[p], self.polys[q]
        k = self.rng.randint(2, 5)
        options = [
            (f"{p} + {q}", bp + bq),
            (f"{p} - {k}*{q}", bp + bq),
            (f"{p} * {q}", bp * bq),
            (f"{p}^2", bp * bp),
            (f"{p} + {k}", bp + 1),
            (f"{k}*{p}", bp),
        ]
        allowed = [o for o in options if o[1] <= MAX_TERMS]
        expr, bound = self.rng.choice(allowed or options[-1:])
        name = self.fresh_name("p")
        self.emit("mvp_arith", f"{name} <- {expr}")
        self.polys[name] = bound
        return True

    def mvp_print(self):
        p = self.pick_poly()
        if p is None:
            return False
        self.emit("mvp_print", p)
        return True

    def mvp_equal(self):
        p = self.pick_poly()
        if p is None:
            return False
        q = self.pick_poly()
        if self.polys[p] * self.polys[q] <= 4 * MAX_TERMS and self.rng.random() < 0.6:
            self.emit("mvp_equal", f"({p}+{q})*({p}-{q}) == {p}^2 - {q}^2")
        else:
            self.emit("mvp_equal", f"{p} == {q}")
        return True

    def coeffs_query(self):
        p = self.pick_poly()
        if p is None:
            return False
        fn = self.rng.choice(["sum", "max", "min", "sort", "length", "prod"])
        self.emit("coeffs_query", f"{fn}(coeffs({p}))")
        return True

    def set_coeffs(self):
        p = self.pick_poly()
        if p is None:
            return False
        k = self.rng.randint(1, 6)
        self.emit("set_coeffs", self.rng.choice([
            f"coeffs({p}) <- coeffs({p}) %% 2",
            f"coeffs({p})[coeffs({p}) < {k}] <- 0",
            f"coeffs({p})[coeffs({p}) < {k}] <- 4 + coeffs({p})[coeffs({p}) < {k}]",
            f"coeffs({p}) <- pmax(coeffs({p}), {k})",
            f"coeffs({p}) <- coeffs({p})^2 + 7",
        ]))
        return True

    def mvp_prohibited(self):
        p = self.pick_poly()
        if p is None:
            return False
        q = self.pick_poly()
        self.emit("mvp_prohibited", self.rng.choice([
            f"try(sum(coeffs({p}) + coeffs({q})))",
            f"try(coeffs({p}) <- coeffs({q}))",
            f"try(coeffs({p}) <- 1:2)",
            f"try(coeffs({p})[coeffs({p}) < 3] <- coeffs({p})[coeffs({q}) < 3])",
        ]))
        return True

    def triples(self):
        p = self.pick_poly()
        if p is None:
            return False
        va, pa, ca = (self.fresh_name(s) for s in ("va", "pa", "ca"))
        self.emit("triples", f"{va} <- vars({p})")
        self.emit("triples", f"{pa} <- powers({p})")
        self.emit("triples", f"{ca} <- coeffs({p})")
        k = self.rng.randint(1, 6)
        if self.rng.random() < 0.5:
            self.emit("map", f"{pa}[{ca} < {k}] <- map({pa}, double)[{ca} < {k}]")
        else:
            j = self.rng.randint(0, 3)
            self.emit("map", f"{va}[map({pa}, lengths) > {j}] <- map({va}, upper)[map({pa}, lengths) > {j}]")
        name = self.fresh_name("p")
        self.emit("triples", f"{name} <- mvp({va}, {pa}, {ca})")
        self.emit("triples", name)
        self.polys[name] = self.polys[p]
        return True

    def program(self, statements: int):
        makers = [
            (3, self.make_disord),
            (2, self.make_rdis),
            (2, self.make_mvp_literal),
            (1, self.make_rmvp),
            (3, self.arith_scalar),
            (3, self.arith_pair),
            (2, self.compare),
            (3, self.reduce),
            (2, self.sort),
            (2, self.pmax_pmin),
            (2, self.rev),
            (2, self.extract_bool),
            (3, self.replace_bool),
            (4, self.extract_int),
            (3, self.replace_int),
            (2, self.replace_all),
            (2, self.hash_mismatch),
            (2, self.plain_operand),
            (2, self.mvp_arith),
            (2, self.mvp_print),
            (2, self.mvp_equal),
            (2, self.coeffs_query),
            (2, self.set_coeffs),
            (2, self.mvp_prohibited),
            (2, self.triples),
        ]
        weights = [w for w, _ in makers]
        self.make_disord() if self.rng.random() < 0.5 else self.make_rdis()
        self.make_mvp_literal() if self.rng.random() < 0.5 else self.make_rmvp()
        emitted = 0
        while emitted < statements:
            (_, maker), = self.rng.choices(makers, weights=weights)
            if maker():
                emitted += 1


def gen_program(seed: int, statements: Optional[int] = None) -> FuzzProgram:
    """Deterministic random program exercising every disord and polynomial operation."""
    gen = _Generator(seed)
    if statements is None:
        statements = gen.rng.randint(10, 18)
    gen.program(statements)
    return FuzzProgram(seed, tuple(gen.lines), frozenset(gen.kinds))


# -- campaigns ---------------------------------------------------------------

@dataclass(frozen=True)
class CampaignResult:
    programs: int
    failure: Optional[Verdict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None


def _check_seed(args):
    seed, trials = args
    return check_invariance(gen_program(seed), trials)


def run_campaign(seeds: Iterable[int], trials: int = 4, jobs: int = 1) -> CampaignResult:
    """Check every seed; stops at the first failing program."""
    seeds = list(seeds)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = pool.map(_check_seed, [(s, trials) for s in seeds], chunksize=64)
            for count, verdict in enumerate(verdicts, start=1):
                if not verdict.passed:
                    pool.shutdown(cancel_futures=True)
                    return CampaignResult(count, verdict)
        return CampaignResult(len(seeds))
    for count, seed in enumerate(seeds, start=1):
        verdict = check_invariance(gen_program(seed), trials)
        if not verdict.passed:
            return CampaignResult(count, verdict)
    return CampaignResult(len(seeds))
