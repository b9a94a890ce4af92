// sweepout: implementation forthcoming in this translation unit.
