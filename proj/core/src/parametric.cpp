// parametric: implementation forthcoming in this translation unit.
