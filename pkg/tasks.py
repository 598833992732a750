#!/usr/bin/env python

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

# For use with the invoke tool, see: http://www.pyinvoke.org/

from invoke import task


@task
def precheck(ctx):
    ctx.run("black --check .")
    ctx.run("flake8 .")
    ctx.run("interrogate -c pyproject.toml", pty=True)


@task
def test(ctx, slow=False):
    marker = "slow" if slow else "not slow"
    ctx.run(f'pytest -m "{marker}" --cov-report=term', pty=True)


@task
def clean(ctx):
    ctx.run("rm -rf hybrid_polar.egg-info build dist")
    ctx.run("rm -rf .pytest_cache .pytest_tmpdir .coverage htmlcov")


@task
def mask(ctx, n=1024, k=512, out="frozen-1024-512.txt"):
    ctx.run(f"hybrid-polar construct --n {n} --k {k} --out {out}")


@task
def sweep(ctx, config="sweep.yaml", workers=None):
    flags = f" --workers {workers}" if workers else ""
    ctx.run(f"hybrid-polar --log-level INFO sweep --config {config}{flags}", pty=True)
