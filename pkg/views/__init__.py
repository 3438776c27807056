""" Imports. """

from views.reportview import (
    ReportView
)

__all__ = [
    'ReportView'
]


from views.plotview import (
    PlotView
)

__all__ += [
    'PlotView'
]
