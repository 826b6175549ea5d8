from types import ModuleType
from typing import Union

from nativeternary.commands import (
    analyze,
    bench,
    corrupt,
    decode,
    encode,
    inspect,
    pack,
    transcode,
    unpack,
)

CommandConfig = dict[str, Union[ModuleType, list[str]]]
CommandList = list[CommandConfig]

command_list: CommandList = [
    ## Codec
    {"command": encode},
    {"command": decode},
    {"command": transcode},
    ## Model container
    {"command": pack},
    {"command": unpack},
    {"command": inspect, "aliases": ["info"]},
    ## Measurement
    {"command": corrupt},
    {"command": bench},
    {"command": analyze},
]
