# -*- coding: utf-8 -*-
"""Common code for use across all apps."""
