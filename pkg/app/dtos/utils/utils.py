from typing import Annotated

from pydantic import StringConstraints

ScalarStr = Annotated[
    str, StringConstraints(pattern=r"^-?(0|1|(\d+|pi)(\^(-?\d+|\(-?\d+/2\)))?(\*(\d+|pi)(\^(-?\d+|\(-?\d+/2\)))?)*)$")
]
RationalStr = Annotated[str, StringConstraints(pattern=r"^-?\d+(/\d+)?$")]
LabelStr = Annotated[str, StringConstraints(min_length=1, max_length=64)]
