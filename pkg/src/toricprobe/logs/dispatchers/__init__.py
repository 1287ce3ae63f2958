"""
Dispatchers take the log messages and send them somewhere: the console, a list in memory, or nowhere.
Write your own by extending BaseDispatcher and naming its class in the config file.
"""
