# app/services/__init__.py

# Un servicio por área (geometría, EM, redes, Touchstone, varactor, parásitos, barridos, reportes)
