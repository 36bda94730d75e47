# -*- coding: utf-8 -*-
"""Gaze-guided instance bags."""
