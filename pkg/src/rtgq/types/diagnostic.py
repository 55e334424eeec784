from pydantic import BaseModel

__all__ = ["Diagnostic"]


class Diagnostic(BaseModel):
    code: str
    message: str

    def line(self) -> str:
        return f"rtgq-error[{self.code}]: {' '.join(self.message.split())}"
