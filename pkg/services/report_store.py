# services/report_store.py
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

from core.config import settings

try:
    import boto3  # only used when ENV == "cloud"
except ImportError:
    boto3 = None

log = logging.getLogger(__name__)


class BaseReportStore:
    """
    Archive for full check reports (JSON documents addressed by key).
    """

    def put_json(self, key: str, document: Dict[str, Any]) -> None:
        raise NotImplementedError

    def get_json(self, key: str) -> Dict[str, Any]:
        raise NotImplementedError

    def list_keys(self, prefix: str = "") -> List[str]:
        raise NotImplementedError


# ---------------------------------------------------------
# Local implementation (a folder plays the bucket)
# ---------------------------------------------------------
class LocalReportStore(BaseReportStore):
    """
    Stores reports under root_dir; used when ENV != "cloud".
    """

    def __init__(self, root_dir: str | Path) -> None:
        self.root_dir = Path(root_dir)
        self.root_dir.mkdir(parents=True, exist_ok=True)

    def _resolve_key(self, key: str) -> Path:
        """
        Map a logical key like "checks/small/<id>.json" to a path under root_dir.
        """
        full_path = self.root_dir / key
        full_path.parent.mkdir(parents=True, exist_ok=True)
        return full_path

    def put_json(self, key: str, document: Dict[str, Any]) -> None:
        self._resolve_key(key).write_text(json.dumps(document, indent=2, sort_keys=True))

    def get_json(self, key: str) -> Dict[str, Any]:
        path = self._resolve_key(key)
        if not path.exists():
            raise FileNotFoundError(f"Report not found: {key} ({path})")
        return json.loads(path.read_text())

    def list_keys(self, prefix: str = "") -> List[str]:
        return sorted(
            str(p.relative_to(self.root_dir))
            for p in self.root_dir.rglob("*.json")
            if str(p.relative_to(self.root_dir)).startswith(prefix)
        )


# ---------------------------------------------------------
# S3 implementation (ENV == "cloud")
# ---------------------------------------------------------
class S3ReportStore(BaseReportStore):
    def __init__(self, bucket_name: str, boto3_client: Optional[object] = None) -> None:
        if boto3 is None and boto3_client is None:
            raise ImportError("boto3 is required for S3ReportStore but is not installed.")
        self.bucket_name = bucket_name
        self.s3 = boto3_client or boto3.client("s3")

    def put_json(self, key: str, document: Dict[str, Any]) -> None:
        self.s3.put_object(
            Bucket=self.bucket_name,
            Key=key,
            Body=json.dumps(document, sort_keys=True).encode("utf-8"),
            ContentType="application/json",
        )

    def get_json(self, key: str) -> Dict[str, Any]:
        obj = self.s3.get_object(Bucket=self.bucket_name, Key=key)
        return json.loads(obj["Body"].read())

    def list_keys(self, prefix: str = "") -> List[str]:
        paginator = self.s3.get_paginator("list_objects_v2")
        return sorted(
            item["Key"]
            for page in paginator.paginate(Bucket=self.bucket_name, Prefix=prefix)
            for item in page.get("Contents", [])
        )


def get_report_store() -> BaseReportStore:
    """
    - ENV == "cloud" -> S3ReportStore (bucket REPORT_BUCKET)
    - otherwise      -> LocalReportStore (folder REPORT_ROOT)
    """
    if settings.ENV == "cloud":
        return S3ReportStore(bucket_name=settings.REPORT_BUCKET)
    return LocalReportStore(root_dir=settings.REPORT_ROOT)
