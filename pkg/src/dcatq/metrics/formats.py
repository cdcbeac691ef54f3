"""Coarse file-format families used to compare declared formats with probed content types."""

from __future__ import annotations

import re

# media type -> family
MEDIA_FAMILIES = {
    "application/json": "json",
    "text/json": "json",
    "application/geo+json": "json",
    "application/ld+json": "rdf",
    "text/csv": "csv",
    "application/csv": "csv",
    "text/tab-separated-values": "csv",
    "application/vnd.ms-excel": "spreadsheet",
    "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet": "spreadsheet",
    "application/vnd.oasis.opendocument.spreadsheet": "spreadsheet",
    "application/xml": "xml",
    "text/xml": "xml",
    "application/rdf+xml": "rdf",
    "text/turtle": "rdf",
    "application/n-triples": "rdf",
    "application/pdf": "pdf",
    "application/zip": "archive",
    "application/x-zip-compressed": "archive",
    "application/gzip": "archive",
    "application/x-gzip": "archive",
    "text/html": "html",
    "application/xhtml+xml": "html",
    "text/plain": "text",
    "image/png": "image",
    "image/jpeg": "image",
    "image/tiff": "image",
}

# format label (file extension or EU file-type code) -> family
LABEL_FAMILIES = {
    "json": "json", "geojson": "json",
    "csv": "csv", "tsv": "csv",
    "xls": "spreadsheet", "xlsx": "spreadsheet", "ods": "spreadsheet",
    "xml": "xml",
    "rdf": "rdf", "rdf_xml": "rdf", "ttl": "rdf", "turtle": "rdf", "jsonld": "rdf", "json_ld": "rdf", "nt": "rdf",
    "pdf": "pdf",
    "zip": "archive", "gzip": "archive", "gz": "archive",
    "html": "html", "htm": "html",
    "txt": "text",
    "png": "image", "jpeg": "image", "jpg": "image", "tiff": "image",
}


def family_of_content_type(content_type: str | None) -> str | None:
    if not content_type:
        return None
    media = content_type.split(";")[0].strip().lower()
    return MEDIA_FAMILIES.get(media)


def family_of_declared(value: str) -> str | None:
    """Family of a dct:format / dcat:mediaType value.

    Accepts bare media types, IANA media-type IRIs, EU file-type authority
    IRIs and plain labels such as ``CSV``.
    """
    text = value.strip()
    if not text:
        return None
    lowered = text.lower()
    marker = "/media-types/"
    if marker in lowered:
        return MEDIA_FAMILIES.get(lowered.split(marker, 1)[1].rstrip("/"))
    if "://" in lowered or lowered.startswith("urn:"):
        lowered = re.split(r"[/#]", lowered.rstrip("/"))[-1]
    elif lowered in MEDIA_FAMILIES:
        return MEDIA_FAMILIES[lowered]
    return LABEL_FAMILIES.get(lowered.lstrip(".").replace("-", "_"))
