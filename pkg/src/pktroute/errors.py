"""Exception hierarchy shared by all solvers.

``InputError`` covers anything wrong with what the caller handed in (exit
code 1 on the command line); ``CapabilityError`` means the input is valid but
exceeds a configured limit such as a state budget or the packet cap (exit 2).
"""


class InputError(ValueError):
    pass


class GraphParseError(InputError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class UnreachableError(InputError):
    def __init__(self, vertex: int, message: str = "unreachable"):
        super().__init__(f"vertex {vertex} {message}")
        self.vertex = vertex


class ScriptError(InputError):
    def __init__(self, index: int, message: str):
        super().__init__(f"operation {index}: {message}")
        self.index = index


class CapabilityError(RuntimeError):
    pass
