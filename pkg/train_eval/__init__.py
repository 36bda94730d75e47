# -*- coding: utf-8 -*-
"""Training, evaluation, experiments and the run registry."""
