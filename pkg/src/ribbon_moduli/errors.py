"""Exception hierarchy shared by every module."""


class RibbonModuliError(Exception):
    """Base class; the CLI maps any subclass to exit status 1."""


class GraphError(RibbonModuliError, ValueError):
    pass


class NotInvolution(GraphError):
    pass


class ValenceTooLow(GraphError):
    pass


class Disconnected(GraphError):
    pass


class LabelMismatch(GraphError):
    pass


class LoopContraction(GraphError):
    pass


class NotForest(GraphError):
    pass


class ResourceLimit(RibbonModuliError):
    pass


class EmptyResult(RibbonModuliError):
    pass


class InvalidFamily(RibbonModuliError, ValueError):
    pass


class GluingMismatch(RibbonModuliError):
    pass


class NotASurface(RibbonModuliError):
    pass
