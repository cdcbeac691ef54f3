"""URL probing: live HTTP checks with bounded concurrency, or a recorded fixture store.

Fixture file schema (version 1)::

    {
      "schema_version": 1,                      # optional
      "recorded_at": "2024-03-21T12:00:00Z",    # optional, used as "now"
      "https://x/a.csv": {"status": 200, "content_type": "text/csv",
                          "response_ms": 80, "outcome": "ok"}
    }

``status`` and ``response_ms`` are required, ``content_type`` and
``outcome`` optional. Without ``outcome`` the outcome is inferred from the
status: null is a connection error, 200-399 ok, anything else an HTTP error.
"""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Mapping
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator
from urllib.parse import urlparse

import httpx

from .errors import FixtureSchemaError, IoError, UnsupportedScheme

log = logging.getLogger(__name__)

OUTCOMES = ("ok", "http_error", "timeout", "connection_error", "redirect_loop")
FIXTURE_SCHEMA_VERSION = 1
MAX_REDIRECTS = 5
DEFAULT_TIMEOUT_MS = 10_000


@dataclass(frozen=True)
class ProbeResult:
    url: str
    outcome: str
    status_code: int | None = None
    content_type: str | None = None
    response_ms: int = 0

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown probe outcome {self.outcome!r}")
        if self.outcome == "ok" and not (self.status_code is not None and 200 <= self.status_code <= 399):
            raise ValueError(f"outcome ok needs a 2xx/3xx status, got {self.status_code}")
        if self.response_ms < 0:
            raise ValueError("negative response time")

    @property
    def ok(self) -> bool:
        return self.outcome == "ok"

    def to_dict(self) -> dict:
        return asdict(self)


def outcome_for_status(status: int | None) -> str:
    if status is None:
        return "connection_error"
    return "ok" if 200 <= status <= 399 else "http_error"


def is_probeable(url: str) -> bool:
    parsed = urlparse(url.strip())
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


class FixtureStore(Mapping):
    """Read-only url -> ProbeResult map; lookups trim the URL."""

    def __init__(self, entries: dict[str, ProbeResult] | None = None, recorded_at: str | None = None):
        self._entries = {k.strip(): v for k, v in (entries or {}).items()}
        self.recorded_at = recorded_at

    def __getitem__(self, url: str) -> ProbeResult:
        return self._entries[url.strip()]

    def __contains__(self, url) -> bool:
        return isinstance(url, str) and url.strip() in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)


def _line_of(text: str, key: str) -> int:
    needle = json.dumps(key)
    for lineno, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return lineno
    return 1


def _fixture_entry(url: str, raw, timeout_ms: int, line: int) -> ProbeResult:
    if not isinstance(raw, dict):
        raise FixtureSchemaError(line, f"entry for {url} must be an object")
    unknown = set(raw) - {"status", "content_type", "response_ms", "outcome"}
    if unknown:
        raise FixtureSchemaError(line, f"entry for {url} has unknown keys {sorted(unknown)}")
    for key in ("status", "response_ms"):
        if key not in raw:
            raise FixtureSchemaError(line, f"entry for {url} is missing {key!r}")
    status, ms = raw["status"], raw["response_ms"]
    content_type = raw.get("content_type")
    if status is not None and (not isinstance(status, int) or isinstance(status, bool)):
        raise FixtureSchemaError(line, f"status for {url} must be an integer or null")
    if not isinstance(ms, int) or isinstance(ms, bool) or ms < 0:
        raise FixtureSchemaError(line, f"response_ms for {url} must be a non-negative integer")
    if content_type is not None and not isinstance(content_type, str):
        raise FixtureSchemaError(line, f"content_type for {url} must be a string or null")
    outcome = raw.get("outcome") or outcome_for_status(status)
    if outcome not in OUTCOMES:
        raise FixtureSchemaError(line, f"outcome for {url} must be one of {list(OUTCOMES)}")
    if outcome == "timeout":
        ms = timeout_ms
    try:
        return ProbeResult(url.strip(), outcome, status, content_type, ms)
    except ValueError as exc:
        raise FixtureSchemaError(line, f"entry for {url}: {exc}") from exc


def load_fixtures(path: str | Path, timeout_ms: int = DEFAULT_TIMEOUT_MS) -> FixtureStore:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read fixtures {path}: {exc.strerror or exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureSchemaError(exc.lineno, exc.msg) from exc
    if not isinstance(raw, dict):
        raise FixtureSchemaError(1, "fixture file must be a JSON object")

    version = raw.pop("schema_version", FIXTURE_SCHEMA_VERSION)
    if version != FIXTURE_SCHEMA_VERSION:
        raise FixtureSchemaError(_line_of(text, "schema_version"), f"unsupported schema_version {version!r}")
    recorded_at = raw.pop("recorded_at", None)
    if recorded_at is not None:
        from .timeutil import parse_timestamp

        if not isinstance(recorded_at, str) or parse_timestamp(recorded_at) is None:
            raise FixtureSchemaError(_line_of(text, "recorded_at"), "recorded_at must be an ISO-8601 timestamp")

    entries = {}
    for url, entry in raw.items():
        entries[url] = _fixture_entry(url, entry, timeout_ms, _line_of(text, url))
    return FixtureStore(entries, recorded_at)


def _attempt(client: httpx.Client, url: str, timeout_ms: int) -> ProbeResult:
    start = time.monotonic()
    elapsed = lambda: int(round((time.monotonic() - start) * 1000))  # noqa: E731
    try:
        resp = client.head(url)
        if resp.status_code in (405, 501):
            with client.stream("GET", url) as streamed:
                resp = streamed
        status = resp.status_code
        return ProbeResult(url, outcome_for_status(status), status,
                           resp.headers.get("content-type"), elapsed())
    except httpx.TimeoutException:
        return ProbeResult(url, "timeout", None, None, timeout_ms)
    except httpx.TooManyRedirects:
        return ProbeResult(url, "redirect_loop", None, None, elapsed())
    except (httpx.TransportError, httpx.InvalidURL):
        return ProbeResult(url, "connection_error", None, None, elapsed())


def _transient(result: ProbeResult) -> bool:
    if result.outcome in ("timeout", "connection_error"):
        return True
    return result.status_code is not None and result.status_code >= 500 and result.status_code != 501


def probe(url: str, timeout_ms: int = DEFAULT_TIMEOUT_MS, retries: int = 1,
          client: httpx.Client | None = None) -> ProbeResult:
    """HEAD the URL (GET headers on 405/501), following up to five redirects.

    Transient failures (timeouts, connection errors, 5xx) are retried up to
    ``retries`` times; the last attempt is returned.
    """
    url = url.strip()
    if not is_probeable(url):
        raise UnsupportedScheme(url)
    own = client is None
    if own:
        client = httpx.Client(follow_redirects=True, max_redirects=MAX_REDIRECTS,
                              timeout=timeout_ms / 1000)
    try:
        result = _attempt(client, url, timeout_ms)
        for _ in range(retries):
            if not _transient(result):
                break
            log.debug("retrying %s after %s", url, result.outcome)
            result = _attempt(client, url, timeout_ms)
        return result
    finally:
        if own:
            client.close()


def probe_all(urls: Iterable[str], max_in_flight: int = 8, timeout_ms: int = DEFAULT_TIMEOUT_MS,
              retries: int = 1, probe_fn: Callable[..., ProbeResult] | None = None) -> dict[str, ProbeResult]:
    """Probe each distinct URL once with at most ``max_in_flight`` requests outstanding.

    Non-http(s) URLs are left out of the result.
    """
    if max_in_flight < 1:
        raise ValueError("max_in_flight must be >= 1")
    unique = sorted({u.strip() for u in urls})
    skipped = [u for u in unique if not is_probeable(u)]
    for url in skipped:
        log.warning("not probing %s: unsupported scheme", url)
    todo = [u for u in unique if is_probeable(u)]
    if not todo:
        return {}
    fn = probe_fn or probe
    with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
        results = list(pool.map(lambda u: fn(u, timeout_ms=timeout_ms, retries=retries), todo))
    return dict(zip(todo, results))
