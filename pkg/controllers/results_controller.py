"""
Results Controller - handles CRUD operations for stored run summaries.

Manages RunRecord and FunctionSummaryRecord entities.
"""
import logging
from typing import List, Mapping, Optional

from sqlalchemy.orm import Session

from models import FunctionSummaryRecord, RunRecord
from models.simulation import RunResult

logger = logging.getLogger(__name__)


class ResultsController:
    """Controller for managing stored run summaries."""

    @staticmethod
    def create(
        db: Session,
        result: RunResult,
        slas: Optional[Mapping[str, float]] = None,
        duration_s: Optional[float] = None,
    ) -> int:
        """
        Store the per-function summary of one run.

        Args:
            db: Database session
            result: Finished run with its summary
            slas: SLA per function, stored alongside the metrics
            duration_s: Simulated duration

        Returns:
            ID of the new run record
        """
        slas = slas or {}
        try:
            record = RunRecord(
                experiment=result.experiment,
                app=result.app,
                mode=result.mode.value,
                seed=result.seed,
                replication=result.replication,
                duration_s=duration_s,
            )
            for name, summary in result.summary.items():
                record.functions.append(FunctionSummaryRecord(
                    function=name,
                    sla_ms=slas.get(name),
                    rt_mean_ms=summary.rt_mean_ms,
                    rt_std_ms=summary.rt_std_ms,
                    cores_mean_millicores=summary.cores_mean_millicores,
                    cores_std_millicores=summary.cores_std_millicores,
                    violation_pct=summary.violation_pct,
                    no_sla=summary.no_sla,
                ))
            db.add(record)
            db.commit()
            logger.debug("stored run %d (%s %s seed %d)", record.id, result.app, result.mode.value, result.seed)
            return record.id
        except Exception:
            logger.exception("could not store run of %s", result.app)
            db.rollback()
            raise

    @staticmethod
    def get_by_id(db: Session, run_id: int) -> Optional[RunRecord]:
        """
        Retrieve a stored run by ID.

        Returns:
            RunRecord instance or None
        """
        return db.query(RunRecord).filter_by(id=run_id).first()

    @staticmethod
    def get_by_app(db: Session, app_name: str) -> List[RunRecord]:
        """All stored runs of an app, oldest first."""
        return db.query(RunRecord).filter_by(app=app_name).order_by(RunRecord.id).all()

    @staticmethod
    def delete(db: Session, run_id: int) -> bool:
        """
        Delete a stored run and its function summaries.

        Returns:
            True if a run was deleted, False otherwise
        """
        try:
            record = db.query(RunRecord).filter_by(id=run_id).first()
            if not record:
                return False
            db.delete(record)
            db.commit()
            return True
        except Exception as e:
            logger.error("error deleting run %s: %s", run_id, e)
            db.rollback()
            return False
