"""Gaze-driven documentation navigation toolkit.

Subpackages: pipeline (sample stream to gaze events), engine (gaze events
to interaction events over registered targets), sources (replay, scenario,
tracker adapter, api), service (HTTP session service), injector (HTML tree
preparation), metrics (event-log reports).
"""

__version__ = "0.1.0"
