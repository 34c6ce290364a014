"""Utility modules."""



