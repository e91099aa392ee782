"""RunRecord model - represents the runs table."""
from sqlalchemy import Column, String, Integer, Float
from sqlalchemy.orm import relationship
from db import Base


class RunRecord(Base):
    """
    Model for runs table.

    One summarized replication of an experiment in one control mode.
    """
    __tablename__ = 'runs'

    id = Column(Integer, primary_key=True, autoincrement=True)
    experiment = Column(String)
    app = Column(String, index=True)
    mode = Column(String)
    seed = Column(Integer)
    replication = Column(Integer)
    duration_s = Column(Float)

    # Relationships
    functions = relationship("FunctionSummaryRecord", back_populates="run", cascade="all, delete-orphan")
