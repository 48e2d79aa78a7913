""" ``wban-route`` is a discrete-event simulator of thermal-aware,
    energy-balanced routing in wireless body area networks."""


__version__ = "0.1.0"
