#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
qd-objectivity-bounds 命令行入口

    python main.py bound --thm 1 --nbar 1 --N 1e60
    python main.py figure fig2 -o fig2.csv
    python main.py verify --suite all
"""

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.dirname(__file__)))

from modules.cli.commands import main

if __name__ == "__main__":
    sys.exit(main())
