class StiffSpectraException(Exception):
    """
    stiff_spectra の基底例外。
    サブパッケージの例外はすべてこのクラスを継承し、message に共通の接頭辞を持つ。
    """

    def __init__(self, message: str = "An unexpected error occurred."):
        # 例: [Stiff Spectra] Mesh quality too low: ...
        full_message = f"[Stiff Spectra] {message}"

        self.message = full_message

        super().__init__(full_message)
