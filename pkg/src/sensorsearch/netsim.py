"""Deterministic message transport and virtual clock for the simulated nodes.

All nodes share one logical clock and one event queue.  Sends become delivery
events after a configurable per-hop latency; timers become firing events.
Events execute in (time, insertion order), so a scenario replayed with the
same seed produces a byte-identical trace.

``run_until_idle`` drains in-flight work: deliveries, plus timers that are
already due.  Timers armed for the future fire only when the scenario
explicitly passes time through ``advance_clock`` — that is what drives
registration and publication expiry.
"""

from __future__ import annotations

import heapq
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

Address = tuple[str, int]

DEFAULT_STEP_LIMIT = 1_000_000


class StepLimitExceeded(Exception):
    """The simulation still had runnable work after the step budget: a livelock."""

    def __init__(self, steps: int):
        super().__init__(f"simulation still busy after {steps} steps")
        self.steps = steps


def format_address(addr: Address) -> str:
    return f"{addr[0]}:{addr[1]}"


def payload_summary(payload: bytes) -> str:
    """First line of a payload, compacted for the trace log."""
    first = payload.split(b"\r\n", 1)[0].split(b"\n", 1)[0]
    text = first.decode("utf-8", errors="replace").strip()
    if text.endswith(" SIP/2.0"):
        text = text[: -len(" SIP/2.0")]
    elif text.endswith(" HTTP/1.0"):
        text = text[: -len(" HTTP/1.0")]
    return text


@dataclass
class Endpoint:
    """A bound network address: either handler-driven or a pull-mode inbox."""

    address: Address
    handler: Callable[[Address, bytes], None] | None = None
    inbox: deque[tuple[Address, bytes]] = field(default_factory=deque)


class TimerHandle:
    __slots__ = ("fire_at", "fn", "owner", "token", "cancelled")

    def __init__(self, fire_at: int, fn: Callable[[], None], owner: str, token: str):
        self.fire_at = fire_at
        self.fn = fn
        self.owner = owner
        self.token = token
        self.cancelled = False

    def cancel(self) -> None:
        self.cancelled = True


_DELIVER = 0
_TIMER = 1


class Simulation:
    """Single-threaded deterministic event loop binding all simulated nodes."""

    def __init__(
        self,
        seed: int = 0,
        *,
        latency_ms: int = 1,
        jitter_ms: int = 0,
        loss_rate: float = 0.0,
        record_payloads: bool = False,
    ):
        self.now = 0
        self.rng = random.Random(seed)
        self.latency_ms = latency_ms
        self.jitter_ms = jitter_ms
        self.loss_rate = loss_rate
        self.endpoints: dict[Address, Endpoint] = {}
        self.drops = 0
        self.losses = 0
        self.trace: list[str] = []
        self.trace_sink: Callable[[str], None] | None = None
        self.payload_log: list[tuple[int, Address, Address, bytes]] | None = (
            [] if record_payloads else None
        )
        self._queue: list[tuple[int, int, int, object]] = []
        self._seq = 0

    # -- wiring ----------------------------------------------------------

    def bind(self, address: Address, handler: Callable[[Address, bytes], None] | None = None) -> Endpoint:
        if address in self.endpoints:
            raise ValueError(f"address already bound: {format_address(address)}")
        endpoint = Endpoint(address=address, handler=handler)
        self.endpoints[address] = endpoint
        return endpoint

    def unbind(self, address: Address) -> None:
        self.endpoints.pop(address, None)

    def is_bound(self, address: Address) -> bool:
        return address in self.endpoints

    def new_token(self, prefix: str = "t") -> str:
        return f"{prefix}-{self.rng.randrange(16**10):010x}"

    # -- sending and timers -----------------------------------------------

    def send(self, sender: Address, to: Address, payload: bytes) -> None:
        if self.loss_rate and self.rng.random() < self.loss_rate:
            self.losses += 1
            self._trace("lose", sender, to, payload_summary(payload))
            return
        delay = self.latency_ms
        if self.jitter_ms:
            delay += self.rng.randrange(self.jitter_ms + 1)
        self._push(self.now + delay, _DELIVER, (sender, to, payload))

    def call_later(
        self, delay_ms: int, fn: Callable[[], None], *, owner: str = "-", token: str = "timer"
    ) -> TimerHandle:
        if delay_ms < 0:
            raise ValueError("negative timer delay")
        handle = TimerHandle(self.now + delay_ms, fn, owner, token)
        self._push(handle.fire_at, _TIMER, handle)
        return handle

    # -- the loop ----------------------------------------------------------

    def run_until_idle(self, limit: int = DEFAULT_STEP_LIMIT) -> int:
        """Process deliveries and already-due timers; return steps consumed."""
        if limit <= 0:
            raise ValueError("limit must be positive")
        steps = 0
        while True:
            head = self._peek()
            if head is None:
                return steps
            time, _, kind, _ = head
            if kind == _TIMER and time > self.now:
                return steps
            if steps >= limit:
                raise StepLimitExceeded(steps)
            self._pop_and_run()
            steps += 1

    def advance_clock(self, delta_ms: int) -> int:
        """Move time forward, firing everything due on the way; returns timer count."""
        if delta_ms < 0:
            raise ValueError("clock cannot go backwards")
        target = self.now + delta_ms
        fired = 0
        while True:
            head = self._peek()
            if head is None or head[0] > target:
                break
            if self._pop_and_run() == _TIMER:
                fired += 1
        self.now = target
        return fired

    def pending_events(self) -> int:
        self._compact()
        return len(self._queue)

    # -- internals ----------------------------------------------------------

    def _push(self, time: int, kind: int, data: object) -> None:
        self._seq += 1
        heapq.heappush(self._queue, (time, self._seq, kind, data))

    def _compact(self) -> None:
        while self._queue:
            _, _, kind, data = self._queue[0]
            if kind == _TIMER and data.cancelled:  # type: ignore[union-attr]
                heapq.heappop(self._queue)
            else:
                break

    def _peek(self):
        self._compact()
        return self._queue[0] if self._queue else None

    def _pop_and_run(self) -> int:
        time, _, kind, data = heapq.heappop(self._queue)
        self.now = max(self.now, time)
        if kind == _TIMER:
            handle: TimerHandle = data  # type: ignore[assignment]
            if not handle.cancelled:
                self._trace("timer", None, None, f"{handle.owner} {handle.token}")
                handle.fn()
        else:
            sender, to, payload = data  # type: ignore[misc]
            endpoint = self.endpoints.get(to)
            if endpoint is None:
                self.drops += 1
                self._trace("drop", sender, to, payload_summary(payload))
            else:
                self._trace("deliver", sender, to, payload_summary(payload))
                if self.payload_log is not None:
                    self.payload_log.append((self.now, sender, to, payload))
                if endpoint.handler is not None:
                    endpoint.handler(sender, payload)
                else:
                    endpoint.inbox.append((sender, payload))
        return kind

    def _trace(self, kind: str, sender: Address | None, to: Address | None, summary: str) -> None:
        line = " ".join(
            [
                str(self.now),
                kind,
                format_address(sender) if sender else "-",
                format_address(to) if to else "-",
                summary,
            ]
        )
        self.trace.append(line)
        if self.trace_sink is not None:
            self.trace_sink(line)

    def trace_text(self) -> str:
        return "\n".join(self.trace) + ("\n" if self.trace else "")
