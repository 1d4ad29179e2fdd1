"""Critical sets of nonlinear planar maps and differential operators."""

from ._critset import *  # noqa: F401,F403
