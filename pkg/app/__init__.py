# app/__init__.py

# Paquete de Capsula: co-diseño RF de encapsulado a nivel de oblea
