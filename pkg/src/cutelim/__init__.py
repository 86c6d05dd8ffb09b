"""Cut elimination by saturation: inference-system core, pushdown systems,
finite domain logic, natural deduction and constructive sequent calculi."""

__version__ = "0.1.0"
