"""Corpus runner: decide a seeded formula corpus and report one record per formula."""

import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from hml.core.props import decide, gen_corpus
from hml.core.search import ResourceLimitError
from hml.core.syntax import Formula, format_formula
from hml.core.translate import t_translate
from hml.models import CorpusRecord, LogicId
from hml.utils.performance import PerformanceTimer, ProgressManager, measure_time

logger = logging.getLogger(__name__)

BRIDGES: Dict[LogicId, LogicId] = {LogicId.K4H: LogicId.K4Q, LogicId.S4H: LogicId.S4Q}

PROVABLE = "provable"
NOT_PROVABLE = "not-provable"
RESOURCE_LIMIT = "resource-limit"


class CorpusRunner:
    """Decides every formula of a generated corpus in one logic.

    With ``bridge`` the t-image of each formula is decided as well (K4h via K4Q,
    S4h via S4Q) and a record is flagged when the image is provable while the
    formula is not.
    """

    def __init__(
        self,
        logic: LogicId,
        bridge: bool = False,
        node_budget: Optional[int] = None,
        show_progress: bool = False,
    ):
        if bridge and logic not in BRIDGES:
            raise ValueError(f"--bridge needs K4h or S4h, not {logic.value}")
        self.logic = logic
        self.bridge = bridge
        self.node_budget = node_budget
        self.timer = PerformanceTimer()
        self.progress = ProgressManager(enabled=show_progress)

    def _status(self, logic: LogicId, a: Formula) -> Tuple[str, int]:
        try:
            with measure_time(logic.value, self.timer, (ResourceLimitError,)):
                verdict = decide(logic, a, self.node_budget)
        except ResourceLimitError as e:
            logger.warning(f"{format_formula(a)} in {logic.value}: {e}")
            return RESOURCE_LIMIT, 0
        return (PROVABLE if verdict.provable else NOT_PROVABLE), verdict.nodes

    def run_formulas(self, formulas: List[Formula]) -> List[CorpusRecord]:
        records = []
        with self.progress.task(f"Deciding in {self.logic.value}", total=len(formulas)) as task:
            for index, a in enumerate(formulas):
                status, nodes = self._status(self.logic, a)
                record = CorpusRecord(
                    index=index,
                    formula=format_formula(a),
                    logic=self.logic,
                    status=status,
                    nodes=nodes,
                )
                if self.bridge:
                    translated, _ = self._status(BRIDGES[self.logic], t_translate(a))
                    record.translated_status = translated
                    record.bridge_violation = translated == PROVABLE and status == NOT_PROVABLE
                records.append(record)
                self.progress.advance(task)
        self._log_summary(records)
        return records

    def run(self, seed: int, count: int, depth: int, max_index: int) -> List[CorpusRecord]:
        """Generate the corpus for ``seed`` and decide it."""
        formulas = gen_corpus(seed, count, depth, max_index)
        logger.debug(f"Generated {len(formulas)} formulas from seed {seed}")
        return self.run_formulas(formulas)

    def _log_summary(self, records: List[CorpusRecord]) -> None:
        counts = Counter(r.status for r in records)
        summary = ", ".join(f"{k}: {v}" for k, v in sorted(counts.items()))
        logger.info(f"Corpus in {self.logic.value} finished ({summary})")
        if self.bridge:
            violations = sum(1 for r in records if r.bridge_violation)
            converse = sum(
                1 for r in records if r.status == PROVABLE and r.translated_status == NOT_PROVABLE
            )
            logger.info(f"Bridge: {violations} violations, {converse} converse misses")
        self.timer.log_summary()


def summarize(records: List[CorpusRecord]) -> Dict[str, int]:
    """Counts per status, plus bridge figures when present."""
    summary: Dict[str, int] = dict(Counter(r.status for r in records))
    if any(r.translated_status is not None for r in records):
        summary["bridge_violations"] = sum(1 for r in records if r.bridge_violation)
        summary["converse_misses"] = sum(
            1 for r in records if r.status == PROVABLE and r.translated_status == NOT_PROVABLE
        )
    return summary
