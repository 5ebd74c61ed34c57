__all__ = [
    "defect_service",
    "logger_service",
]
