from typing import BinaryIO, Callable

ExceptionHandler = Callable[[Exception, BinaryIO], int]
