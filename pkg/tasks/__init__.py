"""
Concurrent execution of independent solver tasks
"""

from .job_runner import RestartRunner, spawn_seeds

__all__ = [
    "RestartRunner",
    "spawn_seeds",
]
