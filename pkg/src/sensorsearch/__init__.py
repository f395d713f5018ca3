"""sensorsearch: a sensor directory over a simulated IMS core.

Simulated sensors register through a serving CSCF whose filter criteria
trigger third-party registration toward a search-engine application server.
The engine indexes each sensor by type and location, stores XML documents in
a document server, tracks liveness through registration state and presence,
and notifies subscribed applications as sensor groups change.
"""

__version__ = "0.1.0"
