"""FunctionSummaryRecord model - per-function metrics of a stored run."""
from sqlalchemy import Column, String, Integer, Float, Boolean, ForeignKey
from sqlalchemy.orm import relationship
from db import Base


class FunctionSummaryRecord(Base):
    """Model for function_summaries table."""
    __tablename__ = 'function_summaries'

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('runs.id'))
    function = Column(String)
    sla_ms = Column(Float, nullable=True)
    rt_mean_ms = Column(Float)
    rt_std_ms = Column(Float)
    cores_mean_millicores = Column(Float)
    cores_std_millicores = Column(Float)
    violation_pct = Column(Float)
    no_sla = Column(Boolean, default=False)

    # Relationship
    run = relationship("RunRecord", back_populates="functions")
