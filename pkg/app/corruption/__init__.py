from app.corruption.families import CORRUPTIONS, corrupt
from app.corruption.manifest import format_manifest, parse_manifest, parse_manifest_text


__all__ = [
    "CORRUPTIONS",
    "corrupt",
    "format_manifest",
    "parse_manifest",
    "parse_manifest_text",
]
