# -*- coding: utf-8 -*-
"""Gaze map rendering from fixation points."""
