import io
import json
import logging

from hdl_labeler.labelers import run_hdl, run_knn_dv
from hdl_labeler.utils.enum import Metric
from hdl_labeler.utils.logger import DefaultFormatter, get_formatted_logger, set_log_level
from hdl_labeler.utils.logging_config import RunManifest


def test_run_manifest_collects_events_and_content(tmp_path):
    manifest = RunManifest("label", json_file=tmp_path / "logs" / "run.json")
    manifest.log_event("k_selected", {"chosen_k": 3})
    manifest.update_content("chosen_k", 3)
    manifest.update_content("level_count", 4)

    stream = io.StringIO()
    manifest.emit(stream)
    printed = json.loads(stream.getvalue())
    assert printed["command"] == "label"
    assert printed["events"][0]["type"] == "k_selected"
    assert printed["events"][0]["data"] == {"chosen_k": 3}
    assert printed["content"]["chosen_k"] == 3
    assert printed["content"]["level_count"] == 4
    assert printed["content"]["fallback_count"] == 0

    saved = json.loads((tmp_path / "logs" / "run.json").read_text())
    assert saved == printed


def test_manifest_without_file_only_prints():
    manifest = RunManifest("select-k")
    stream = io.StringIO()
    manifest.emit(stream)
    assert json.loads(stream.getvalue())["content"]["config"] == {}
    assert manifest.json_file is None


def test_logger_is_configured_once():
    logger = get_formatted_logger("hdl_labeler.tests.once")
    again = get_formatted_logger("hdl_labeler.tests.once")
    assert logger is again
    assert len(logger.handlers) == 1
    assert logger.propagate is False


def test_set_log_level_reaches_child_loggers():
    child = get_formatted_logger("hdl_labeler.tests.child")
    set_log_level("DEBUG")
    assert child.level == logging.DEBUG
    set_log_level("INFO")
    assert child.level == logging.INFO


def test_formatter_prefixes_level_name():
    formatter = DefaultFormatter("%(levelprefix)s %(message)s", use_colors=False)
    record = logging.LogRecord("hdl_labeler", logging.WARNING, __file__, 1, "fallback used", None, None)
    assert formatter.format(record) == "WARNING:  fallback used"


class _Collect(logging.Handler):
    def __init__(self):
        super().__init__(logging.DEBUG)
        self.records: list[logging.LogRecord] = []

    def emit(self, record):
        self.records.append(record)


def _warnings_from(name, run):
    logger = logging.getLogger(name)
    handler = _Collect()
    logger.addHandler(handler)
    try:
        output = run()
    finally:
        logger.removeHandler(handler)
    return output, [r.getMessage() for r in handler.records if r.levelno == logging.WARNING]


def test_broken_ties_are_reported_as_warnings(line_example):
    labeled, labels, unlabeled = line_example

    output, warnings = _warnings_from(
        "hdl_labeler.labelers.knn_dv", lambda: run_knn_dv(labeled, labels, unlabeled, 2, Metric.Euclidean)
    )
    assert output.tie_count == 3
    assert warnings == ["kNN-DV broke 3 vote ties toward the smallest class id"]

    output, warnings = _warnings_from(
        "hdl_labeler.labelers.hdl", lambda: run_hdl(labeled, labels, unlabeled, 2, Metric.Euclidean)
    )
    assert output.tie_count == 1
    assert warnings == ["HDL broke 1 vote ties toward the smallest class id"]


def test_untied_runs_stay_quiet(line_example):
    labeled, labels, unlabeled = line_example
    output, warnings = _warnings_from(
        "hdl_labeler.labelers.knn_dv", lambda: run_knn_dv(labeled, labels, unlabeled, 1, Metric.Euclidean)
    )
    assert output.tie_count == 0
    assert warnings == []
