"""Experiment support: advice providers, exact factor oracles, reports."""
