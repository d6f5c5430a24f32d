# selberg/pipeline/exporter.py
"""
Report exporter for experiment results.

Workflow: ExperimentConfig -> computation -> results dict -> report JSON (+ CSV rows)

The main JSON depends only on the configuration and the results, so reruns
are byte-identical; the run timestamp and export id go to a sidecar
`<name>.meta.json`.
"""

import json
import logging
import math
import uuid
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..models.config import ExperimentConfig
from ..version import __version__

DATA_SCHEMA_VERSION = "1.0.0"
REQUIRED_KEYS = (
    "tool",
    "version",
    "data_schema_version",
    "command",
    "config",
    "config_hash",
    "seeds",
    "results",
)


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy and complex values; complex -> [re, im]."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no infinity; overflowing reference values are kept as strings
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def _find_nan(value: Any, path: str = "$") -> Optional[str]:
    if isinstance(value, float) and math.isnan(value):
        return path
    if isinstance(value, dict):
        for k, v in value.items():
            found = _find_nan(v, f"{path}.{k}")
            if found:
                return found
    if isinstance(value, list):
        for i, v in enumerate(value):
            found = _find_nan(v, f"{path}[{i}]")
            if found:
                return found
    return None


class ReportExporter:
    """
    Builds, validates and writes experiment reports.

    Every report carries the tool version, the config echo and its hash,
    and the seeds used, so a result can be traced back to its run.
    """

    def __init__(self):
        self.logger = logging.getLogger(self.__class__.__name__)

    def build_report(
        self,
        config: ExperimentConfig,
        results: Dict[str, Any],
        seeds: Optional[List[int]] = None,
        warnings: Optional[List[str]] = None,
        summary: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """
        Assemble the machine-readable report.

        Args:
            config: The validated experiment configuration
            results: Command-specific results
            seeds: Seeds that influenced the results
            warnings: Messages worth keeping with the data (dropped rows, missing zero tables)
            summary: Short command-specific summary, echoed on stdout by the CLI

        Returns:
            Report dictionary with only JSON-native values
        """
        report = {
            "tool": "selberg-lab",
            "version": __version__,
            "data_schema_version": DATA_SCHEMA_VERSION,
            "command": config.command,
            "config": config.echo(),
            "config_hash": config.config_hash(),
            "seeds": list(seeds or []),
            "warnings": list(warnings or []),
            "summary": summary or {},
            "results": results,
        }
        return to_jsonable(report)

    def write_report(
        self,
        report: Dict[str, Any],
        output_path: str,
        frame: Optional[pd.DataFrame] = None,
        csv_path: Optional[str] = None,
    ) -> Dict[str, str]:
        """
        Write the report JSON, its metadata sidecar and optionally the CSV rows.

        Returns:
            Paths of the files written
        """
        path = Path(output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, sort_keys=True, ensure_ascii=False, allow_nan=False)
            f.write("\n")
        meta_path = path.with_name(path.stem + ".meta.json")
        with open(meta_path, "w", encoding="utf-8") as f:
            json.dump(self._generate_metadata(report), f, indent=2, sort_keys=True)
            f.write("\n")
        written = {"report": str(path), "metadata": str(meta_path)}
        self.logger.info(f"Wrote {report['command']} report to {path}")
        if frame is not None and csv_path is not None:
            Path(csv_path).parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(csv_path, index=False, float_format="%.17g")
            written["csv"] = str(csv_path)
            self.logger.info(f"Wrote {len(frame)} rows to {csv_path}")
        return written

    def _generate_metadata(self, report: Dict[str, Any]) -> Dict[str, Any]:
        return {
            "export_id": str(uuid.uuid4()),
            "export_timestamp": datetime.now().isoformat(),
            "exporter_version": "1.0.0",
            "data_schema_version": DATA_SCHEMA_VERSION,
            "config_hash": report.get("config_hash"),
        }

    def validate_report(self, report: Dict[str, Any]) -> Dict[str, Any]:
        """
        Check required keys and the absence of NaN.

        Returns:
            Validation report with any issues found
        """
        issues = []
        warnings = []
        for key in REQUIRED_KEYS:
            if key not in report:
                issues.append(f"Missing required key: {key}")
        nan_at = _find_nan(report)
        if nan_at:
            issues.append(f"NaN value at {nan_at}")
        if not report.get("results"):
            warnings.append("Report has no results")
        return {
            "is_valid": len(issues) == 0,
            "issues": issues,
            "warnings": warnings,
        }


def create_report(
    config: ExperimentConfig,
    results: Dict[str, Any],
    output_path: Optional[str] = None,
    seeds: Optional[List[int]] = None,
    warnings: Optional[List[str]] = None,
    summary: Optional[Dict[str, Any]] = None,
    frame: Optional[pd.DataFrame] = None,
    csv_path: Optional[str] = None,
) -> Dict[str, Any]:
    """
    Convenience function: build, validate and (when a path is given) write a report.

    Raises:
        ValueError: If validation fails
    """
    exporter = ReportExporter()
    report = exporter.build_report(config, results, seeds, warnings, summary)
    validation = exporter.validate_report(report)
    if not validation["is_valid"]:
        raise ValueError(f"Report validation failed: {validation['issues']}")
    if validation["warnings"]:
        logger = logging.getLogger(__name__)
        for warning in validation["warnings"]:
            logger.warning(warning)
    if output_path is not None:
        report["written"] = exporter.write_report(report, output_path, frame, csv_path)
    elif frame is not None and csv_path is not None:
        Path(csv_path).parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(csv_path, index=False, float_format="%.17g")
    return report
