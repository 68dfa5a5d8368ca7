# cssdh
# Copyright (C) 2026  cssdh contributors
# This project is licensed under the EUPL-1.2
# SPDX-License-Identifier: EUPL-1.2
from cssdh.cli import main


main()
