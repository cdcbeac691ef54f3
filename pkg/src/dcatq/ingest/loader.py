from __future__ import annotations

import os
from pathlib import Path
from urllib.parse import urlparse

import httpx

from ..errors import FormatUndetectable, IoError
from .catalog import CatalogModel, build_catalog
from .parse import parse_rdf

EXTENSIONS = {".ttl": "turtle", ".turtle": "turtle", ".rdf": "rdf-xml", ".xml": "rdf-xml", ".owl": "rdf-xml"}
MEDIA_TYPES = {"text/turtle": "turtle", "application/x-turtle": "turtle",
               "application/rdf+xml": "rdf-xml", "application/xml": "rdf-xml", "text/xml": "rdf-xml"}


def detect_format(source: str, content_type: str | None = None) -> str:
    if content_type:
        media = content_type.split(";")[0].strip().lower()
        if media in MEDIA_TYPES:
            return MEDIA_TYPES[media]
    path = urlparse(source).path if _is_url(source) else source
    ext = os.path.splitext(path)[1].lower()
    if ext in EXTENSIONS:
        return EXTENSIONS[ext]
    raise FormatUndetectable(f"cannot tell the RDF serialization of {source}; pass a format hint")


def _is_url(source: str) -> bool:
    return urlparse(str(source)).scheme in ("http", "https")


def read_source(source: str | Path, timeout_s: float = 30.0) -> tuple[bytes, str | None]:
    """Return the raw bytes and, for URLs, the response content type."""
    source = str(source)
    if _is_url(source):
        headers = {"Accept": "text/turtle, application/rdf+xml;q=0.9"}
        try:
            resp = httpx.get(source, headers=headers, follow_redirects=True, timeout=timeout_s)
            resp.raise_for_status()
        except httpx.HTTPError as exc:
            raise IoError(f"cannot fetch {source}: {exc}") from exc
        return resp.content, resp.headers.get("content-type")
    try:
        return Path(source).read_bytes(), None
    except OSError as exc:
        raise IoError(f"cannot read {source}: {exc.strerror or exc}") from exc


def load_catalog(source: str | Path, format_hint: str | None = None,
                 mapping: dict[str, str] | None = None) -> CatalogModel:
    source = str(source)
    if format_hint is None and not _is_url(source):
        # fail on the extension before touching the file
        fmt = detect_format(source)
    content, content_type = read_source(source)
    fmt = format_hint or detect_format(source, content_type)
    return build_catalog(parse_rdf(content, fmt), mapping)
