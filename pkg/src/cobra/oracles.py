"""Answer sources for pairwise relation queries.

An oracle is any callable (id_a, id_b) -> Relation.  Oracles only answer;
all bookkeeping of what the answers imply lives in the constraint store.
Three flavors are provided: ground-truth labels, replay of a saved query
log, and a blocking rendezvous for human answers arriving over HTTP.
"""

from __future__ import annotations

import json
import threading
from typing import Callable, Iterable, Optional

from .constraints import Relation
from .core import QueryLog


class ReplayDivergenceError(Exception):
    """A replayed run asked about a pair the original run never queried."""


class OracleAbort(Exception):
    """An interactive session was cancelled while a query was pending."""


class StaleAnswerError(Exception):
    """An answer arrived for a question that is no longer pending."""


def label_oracle(labels) -> Callable[[int, int], Relation]:
    """Answers from ground-truth labels: equal labels mean must-link."""

    def ask(a: int, b: int) -> Relation:
        try:
            la, lb = labels[a], labels[b]
        except (KeyError, IndexError):
            raise LookupError(f"no label for pair ({a}, {b})") from None
        return Relation.MUST_LINK if la == lb else Relation.CANNOT_LINK

    return ask


def save_query_log(log: QueryLog, path: str) -> None:
    """Write oracle-answered pairs as newline-delimited JSON records."""
    with open(path, "w") as fh:
        for entry in log:
            if entry.source != "oracle":
                continue
            record = {"a": entry.a, "b": entry.b, "answer": entry.answer.value}
            fh.write(json.dumps(record) + "\n")


def load_query_log(path: str) -> list[tuple[int, int, Relation]]:
    """Read a query log file back as (a, b, answer) triples."""
    out = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                a, b = int(record["a"]), int(record["b"])
                answer = Relation(record["answer"])
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"{path}:{line_no}: bad query log record: {exc}") from exc
            if answer is Relation.UNKNOWN:
                raise ValueError(f"{path}:{line_no}: log cannot contain unknowns")
            out.append((a, b, answer))
    return out


def replay_oracle(entries: Iterable[tuple[int, int, Relation]]) -> Callable[[int, int], Relation]:
    """Answers straight from a recorded run; any unknown pair is fatal.

    Divergence means the replayed run took a different path than the one
    that produced the log, which is exactly the bug this oracle exists to
    surface.
    """
    answers: dict[tuple[int, int], Relation] = {}
    for a, b, answer in entries:
        answers[(min(a, b), max(a, b))] = answer

    def ask(a: int, b: int) -> Relation:
        try:
            return answers[(min(a, b), max(a, b))]
        except KeyError:
            raise ReplayDivergenceError(
                f"pair ({a}, {b}) was never queried in the recorded run"
            ) from None

    return ask


class SessionOracle:
    """Blocking bridge between a running merge loop and request handlers.

    The run thread calls the oracle, which parks the question and waits.
    Request handlers observe the pending question with pending(), deliver
    the answer with submit(), or end the session with cancel().  Every
    question carries a sequence number; submit() only accepts the current
    one, and only once, so duplicate deliveries are rejected as stale.
    """

    def __init__(self):
        self._cond = threading.Condition()
        self._seq = 0
        self._pending: Optional[tuple[int, int, int]] = None
        self._answer: Optional[Relation] = None
        self._cancelled = False

    def __call__(self, a: int, b: int) -> Relation:
        with self._cond:
            if self._cancelled:
                raise OracleAbort("session cancelled")
            self._seq += 1
            seq = self._seq
            self._pending = (seq, a, b)
            self._answer = None
            self._cond.notify_all()
            while True:
                if self._cancelled:
                    self._pending = None
                    raise OracleAbort("session cancelled")
                if self._answer is not None:
                    answer = self._answer
                    self._pending = None
                    self._answer = None
                    return answer
                self._cond.wait()

    def pending(self) -> Optional[tuple[int, int, int]]:
        """The current (seq, id_a, id_b) question, or None."""
        with self._cond:
            return self._pending

    @property
    def questions_asked(self) -> int:
        with self._cond:
            return self._seq

    def submit(self, seq: int, answer: Relation) -> None:
        if answer not in (Relation.MUST_LINK, Relation.CANNOT_LINK):
            raise ValueError(f"cannot answer with {answer!r}")
        with self._cond:
            if (
                self._cancelled
                or self._pending is None
                or self._pending[0] != seq
                or self._answer is not None
            ):
                raise StaleAnswerError(f"no open question with sequence {seq}")
            self._answer = answer
            self._cond.notify_all()

    def cancel(self) -> None:
        with self._cond:
            self._cancelled = True
            self._cond.notify_all()

    @property
    def cancelled(self) -> bool:
        with self._cond:
            return self._cancelled
