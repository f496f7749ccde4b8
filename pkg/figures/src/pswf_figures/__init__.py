from .render import PlotSpec, load_field_csv, render

__all__ = ["PlotSpec", "load_field_csv", "render"]
