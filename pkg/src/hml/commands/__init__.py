"""Batch commands for the workbench CLI."""

from .corpus_runner import CorpusRunner, summarize

__all__ = ["CorpusRunner", "summarize"]
