#      Copyright (C) 2020  Jeremy Schulman
#
#      This program is free software: you can redistribute it and/or modify
#      it under the terms of the GNU General Public License as published by
#      the Free Software Foundation, either version 3 of the License, or
#      (at your option) any later version.
#
#      This program is distributed in the hope that it will be useful,
#      but WITHOUT ANY WARRANTY; without even the implied warranty of
#      MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#      GNU General Public License for more details.
#
#      You should have received a copy of the GNU General Public License
#      along with this program.  If not, see <https://www.gnu.org/licenses/>.

PACKAGE_NAME = "hybrid_polar"

# decoder defaults used across the package and the CLI.

DEFAULT_Z0 = 0.5
DEFAULT_MAX_ITER = 60
DEFAULT_SATURATION = 20.0
DEFAULT_BP_SCALE = 1.0
DEFAULT_SC_OUTPUT_BITS_LOG2 = 3
